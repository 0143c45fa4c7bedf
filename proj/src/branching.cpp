#include "sparsegraph/branching.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sparsegraph/canonical.hpp"
#include "sparsegraph/errors.hpp"
#include "sparsegraph/rng.hpp"

namespace sg {

namespace {

void check_root_law(const FiniteKernel& k, const std::vector<Rat>& root_law) {
  if (static_cast<int>(root_law.size()) != k.size())
    throw std::invalid_argument("root law size does not match the kernel");
  Rat total(0);
  for (const auto& w : root_law) {
    if (w < 0) throw std::invalid_argument("root law has a negative weight");
    total += w;
  }
  if (total != 1) throw std::invalid_argument("root law does not sum to one");
}

int draw_discrete(const std::vector<double>& cumulative, Rng& rng) {
  double u = uniform01(rng);
  for (size_t i = 0; i < cumulative.size(); ++i)
    if (u < cumulative[i]) return static_cast<int>(i);
  return static_cast<int>(cumulative.size()) - 1;
}

}  // namespace

TypedTree sample_bp(const FiniteKernel& k, const std::vector<Rat>& root_law,
                    int horizon, std::uint64_t seed, std::size_t cap) {
  check_root_law(k, root_law);
  if (horizon < 0) throw std::invalid_argument("sample_bp: negative horizon");

  const int types = k.size();
  std::vector<std::vector<double>> mean(types, std::vector<double>(types));
  for (int x = 0; x < types; ++x)
    for (int y = 0; y < types; ++y)
      mean[x][y] = rat_to_double(k.kappa[x][y] * k.mu[y]);

  std::vector<double> root_cum(types);
  double acc = 0.0;
  for (int x = 0; x < types; ++x) {
    acc += rat_to_double(root_law[x]);
    root_cum[x] = acc;
  }

  Rng rng = make_rng(seed);
  TypedTree tree;
  tree.horizon = horizon;
  tree.parent.push_back(-1);
  tree.type.push_back(draw_discrete(root_cum, rng));
  tree.depth.push_back(0);

  for (std::size_t v = 0; v < tree.parent.size(); ++v) {
    if (tree.depth[v] == horizon) continue;
    for (int y = 0; y < types; ++y) {
      double m = mean[tree.type[v]][y];
      if (m <= 0.0) continue;
      std::poisson_distribution<int> po(m);
      int count = po(rng);
      for (int c = 0; c < count; ++c) {
        tree.parent.push_back(static_cast<int>(v));
        tree.type.push_back(y);
        tree.depth.push_back(tree.depth[v] + 1);
        if (tree.parent.size() > cap)
          throw size_refusal("sample_bp: tree exceeded the size cap");
      }
    }
  }
  return tree;
}

TypedTree restrict_tree(const TypedTree& tree, int depth) {
  if (depth < 0) throw std::invalid_argument("restrict_tree: negative depth");
  TypedTree out;
  out.horizon = std::min(tree.horizon, depth);
  std::vector<int> local(tree.parent.size(), -1);
  for (size_t v = 0; v < tree.parent.size(); ++v) {
    if (tree.depth[v] > depth) continue;
    local[v] = static_cast<int>(out.parent.size());
    out.parent.push_back(v == 0 ? -1 : local[tree.parent[v]]);
    out.type.push_back(tree.type[v]);
    out.depth.push_back(tree.depth[v]);
  }
  return out;
}

std::string tree_shape_code(const TypedTree& tree) {
  std::vector<std::vector<int>> adj(tree.parent.size());
  for (size_t v = 1; v < tree.parent.size(); ++v) {
    adj[tree.parent[v]].push_back(static_cast<int>(v));
    adj[v].push_back(tree.parent[v]);
  }
  return rooted_tree_code(adj, 0);
}

std::string NestedMeasure::key() const {
  if (level == 1) return "v:" + rat_to_string(scalar);
  std::string out = "{";
  for (const auto& [child, weight] : atoms)
    out += child.key() + "*" + rat_to_string(weight) + ";";
  out += "}";
  return out;
}

Rat NestedMeasure::total_mass() const {
  if (level == 1) return scalar;
  Rat total(0);
  for (const auto& [child, weight] : atoms) total += weight;
  return total;
}

bool NestedMeasure::equal(const NestedMeasure& other, bool exact, double tol) const {
  if (level != other.level) return false;
  if (level == 1) {
    if (exact) return scalar == other.scalar;
    return std::abs(rat_to_double(scalar - other.scalar)) <= tol;
  }
  if (atoms.size() != other.atoms.size()) return false;
  if (exact) {
    for (size_t i = 0; i < atoms.size(); ++i) {
      if (atoms[i].second != other.atoms[i].second) return false;
      if (!atoms[i].first.equal(other.atoms[i].first, true, tol)) return false;
    }
    return true;
  }
  // tolerance mode: greedy bipartite matching of atoms
  std::vector<char> used(other.atoms.size(), 0);
  for (const auto& [child, weight] : atoms) {
    bool found = false;
    for (size_t j = 0; j < other.atoms.size() && !found; ++j) {
      if (used[j]) continue;
      if (std::abs(rat_to_double(weight - other.atoms[j].second)) > tol) continue;
      if (!child.equal(other.atoms[j].first, false, tol)) continue;
      used[j] = 1;
      found = true;
    }
    if (!found) return false;
  }
  return true;
}

NestedMeasure lambda_hierarchy(const FiniteKernel& k, int x, int level) {
  if (x < 0 || x >= k.size()) throw std::invalid_argument("lambda_hierarchy: bad type");
  if (level < 1) throw std::invalid_argument("lambda_hierarchy: level must be >= 1");

  // hierarchy for all types, level by level
  std::vector<NestedMeasure> current(k.size());
  for (int y = 0; y < k.size(); ++y) {
    current[y].level = 1;
    current[y].scalar = expected_degree(k, y);
  }
  for (int l = 2; l <= level; ++l) {
    std::vector<NestedMeasure> next(k.size());
    for (int y = 0; y < k.size(); ++y) {
      next[y].level = l;
      std::map<std::string, std::pair<NestedMeasure, Rat>> grouped;
      for (int z = 0; z < k.size(); ++z) {
        Rat w = k.kappa[y][z] * k.mu[z];
        if (w == 0) continue;
        auto key = current[z].key();
        auto it = grouped.find(key);
        if (it == grouped.end())
          grouped.emplace(key, std::pair{current[z], w});
        else
          it->second.second += w;
      }
      for (auto& [key, atom] : grouped) next[y].atoms.push_back(std::move(atom));
    }
    current = std::move(next);
  }
  return current[x];
}

double mixed_poisson_pmf(const std::vector<std::pair<double, double>>& mixing, int j) {
  if (j < 0) throw std::invalid_argument("mixed_poisson_pmf: negative count");
  double total = 0.0;
  for (auto [lambda, weight] : mixing) {
    if (lambda < 0 || weight < 0)
      throw std::invalid_argument("mixed_poisson_pmf: negative value or weight");
    if (lambda == 0.0) {
      total += (j == 0) ? weight : 0.0;
      continue;
    }
    total += weight * std::exp(-lambda + j * std::log(lambda) - std::lgamma(j + 1.0));
  }
  return total;
}

namespace {

struct ShapeRegistry {
  struct Shape {
    std::string code;
    int size;
    std::vector<std::pair<int, int>> branches;  // (shape id, multiplicity)
  };
  std::vector<Shape> shapes;
  std::map<std::string, int> index_of;
  std::size_t limit = 2'000'000;

  int add(std::string code, int size, std::vector<std::pair<int, int>> branches) {
    auto it = index_of.find(code);
    if (it != index_of.end()) return it->second;
    if (shapes.size() >= limit)
      throw size_refusal("exact_tree_law: shape enumeration exceeded its limit");
    int id = static_cast<int>(shapes.size());
    index_of.emplace(code, id);
    shapes.push_back({std::move(code), size, std::move(branches)});
    return id;
  }
};

}  // namespace

TreeLaw exact_tree_law(const FiniteKernel& k, const std::vector<Rat>& root_law,
                       int t, int size_cap) {
  check_root_law(k, root_law);
  if (t < 0) throw std::invalid_argument("exact_tree_law: negative depth");
  if (size_cap < 1) throw std::invalid_argument("exact_tree_law: size cap must be >= 1");

  const int types = k.size();
  ShapeRegistry reg;
  int single = reg.add("()", 1, {});
  std::vector<std::vector<int>> level{{single}};  // shapes of height <= h, by code

  for (int h = 1; h <= t; ++h) {
    const auto& prev = level.back();
    std::vector<int> cur;
    // multisets over prev (already code-sorted) with total size <= cap-1
    std::vector<int> picked;
    std::string code;
    auto emit = [&](int budget) {
      std::vector<std::pair<int, int>> branches;
      for (int id : picked)
        if (!branches.empty() && branches.back().first == id)
          ++branches.back().second;
        else
          branches.push_back({id, 1});
      cur.push_back(reg.add("(" + code + ")", size_cap - budget, std::move(branches)));
    };
    auto rec = [&](auto&& self, size_t from, int budget) -> void {
      emit(budget);
      for (size_t i = from; i < prev.size(); ++i) {
        const auto& b = reg.shapes[prev[i]];
        if (b.size > budget) continue;
        picked.push_back(prev[i]);
        code += b.code;
        self(self, i, budget - b.size);
        code.resize(code.size() - reg.shapes[picked.back()].code.size());
        picked.pop_back();
      }
    };
    rec(rec, 0, size_cap - 1);
    std::sort(cur.begin(), cur.end(),
              [&](int a, int b) { return reg.shapes[a].code < reg.shapes[b].code; });
    cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
    level.push_back(std::move(cur));
  }

  // q[x][shape] level by level; the per-shape probabilities are exact in the
  // sense that the cap only limits which shapes are enumerated.
  std::vector<double> lambda(types);
  std::vector<std::vector<double>> mean(types, std::vector<double>(types));
  for (int x = 0; x < types; ++x) {
    lambda[x] = rat_to_double(expected_degree(k, x));
    for (int y = 0; y < types; ++y)
      mean[x][y] = rat_to_double(k.kappa[x][y] * k.mu[y]);
  }

  std::vector<std::vector<double>> q(types, std::vector<double>(1, 1.0));
  std::vector<int> pos_of(reg.shapes.size(), -1);
  pos_of[single] = 0;

  for (int h = 1; h <= t; ++h) {
    const auto& prev = level[h - 1];
    const auto& cur = level[h];
    // nu[x][b]: intensity of branch shape b below a type-x vertex
    std::vector<std::vector<double>> nu(types, std::vector<double>(prev.size(), 0.0));
    for (int x = 0; x < types; ++x)
      for (size_t b = 0; b < prev.size(); ++b) {
        double s = 0.0;
        for (int y = 0; y < types; ++y) s += mean[x][y] * q[y][pos_of[prev[b]]];
        nu[x][b] = s;
      }
    std::vector<int> next_pos(reg.shapes.size(), -1);
    for (size_t i = 0; i < cur.size(); ++i) next_pos[cur[i]] = static_cast<int>(i);
    std::vector<int> prev_pos(reg.shapes.size(), -1);
    for (size_t i = 0; i < prev.size(); ++i) prev_pos[prev[i]] = static_cast<int>(i);

    std::vector<std::vector<double>> qn(types, std::vector<double>(cur.size()));
    for (int x = 0; x < types; ++x)
      for (size_t i = 0; i < cur.size(); ++i) {
        double value = std::exp(-lambda[x]);
        for (auto [bid, mult] : reg.shapes[cur[i]].branches) {
          double v = nu[x][prev_pos[bid]];
          for (int m = 1; m <= mult; ++m) value *= v / m;
        }
        qn[x][i] = value;
      }
    q = std::move(qn);
    pos_of = std::move(next_pos);
  }

  TreeLaw law;
  law.t = t;
  double total = 0.0;
  std::vector<double> root(types);
  for (int x = 0; x < types; ++x) root[x] = rat_to_double(root_law[x]);
  for (int id : level[t]) {
    double p = 0.0;
    for (int x = 0; x < types; ++x) p += root[x] * q[x][pos_of[id]];
    law.p[reg.shapes[id].code] = p;
    total += p;
  }
  law.truncated = std::max(0.0, 1.0 - total);
  return law;
}

TreeLaw empirical_tree_law(const std::vector<TypedTree>& samples, int t,
                           int size_cap) {
  if (samples.empty()) throw std::invalid_argument("empirical_tree_law: no samples");
  if (size_cap < 1) throw std::invalid_argument("empirical_tree_law: size cap must be >= 1");
  TreeLaw law;
  law.t = t;
  const double unit = 1.0 / static_cast<double>(samples.size());
  for (const auto& tree : samples) {
    if (tree.horizon < t)
      throw std::invalid_argument("empirical_tree_law: sample shallower than requested depth");
    TypedTree cut = restrict_tree(tree, t);
    if (static_cast<int>(cut.parent.size()) > size_cap)
      law.truncated += unit;
    else
      law.p[tree_shape_code(cut)] += unit;
  }
  return law;
}

double tree_law_tv(const TreeLaw& a, const TreeLaw& b) {
  double sum = 0.0;
  for (const auto& [code, pa] : a.p) {
    auto it = b.p.find(code);
    sum += std::abs(pa - (it == b.p.end() ? 0.0 : it->second));
  }
  for (const auto& [code, pb] : b.p)
    if (a.p.find(code) == a.p.end()) sum += pb;
  sum += std::abs(a.truncated - b.truncated);
  return sum / 2.0;
}

ReconstructionResult reconstruct_root(double c, double delta, int t, long trials,
                                      std::uint64_t seed, std::size_t cap) {
  if (c <= 0) throw std::invalid_argument("reconstruct_root: c must be positive");
  if (delta < 0 || delta > c)
    throw std::invalid_argument("reconstruct_root: delta must lie in [0, c]");
  if (t < 1) throw std::invalid_argument("reconstruct_root: depth must be >= 1");
  if (trials < 1) throw std::invalid_argument("reconstruct_root: need at least one trial");

  FiniteKernel k = chessboard_kernel(rat_of_double(c + delta), rat_of_double(c - delta));
  k.exact = false;
  const double p_same = (c + delta) / (2.0 * c);
  const double p_diff = (c - delta) / (2.0 * c);

  ReconstructionResult out;
  out.trials = trials;
  double sum = 0.0, sum_surviving = 0.0;

  for (long trial = 0; trial < trials; ++trial) {
    std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(trial));
    int root_type = static_cast<int>(mix64(s) & 1u);
    std::vector<Rat> point{Rat(1 - root_type), Rat(root_type)};
    TypedTree tree = sample_bp(k, point, t, s, cap);
    const size_t n = tree.parent.size();

    // bottom-up likelihood of the depth-t labels under each root type
    std::vector<std::array<double, 2>> msg(n, {1.0, 1.0});
    bool survived = false;
    for (size_t v = n; v-- > 1;) {
      std::array<double, 2> base;
      if (tree.depth[v] == t) {
        survived = true;
        base = {tree.type[v] == 0 ? 1.0 : 0.0, tree.type[v] == 1 ? 1.0 : 0.0};
      } else {
        base = msg[v];
      }
      std::array<double, 2> factor{p_same * base[0] + p_diff * base[1],
                                   p_diff * base[0] + p_same * base[1]};
      auto& target = msg[tree.parent[v]];
      target[0] *= factor[0];
      target[1] *= factor[1];
      double norm = target[0] + target[1];
      target[0] /= norm;
      target[1] /= norm;
    }
    double posterior = msg[0][root_type] / (msg[0][0] + msg[0][1]);
    sum += posterior;
    if (survived) {
      sum_surviving += posterior;
      ++out.surviving;
    }
  }
  out.accuracy = sum / static_cast<double>(trials);
  out.accuracy_surviving =
      out.surviving > 0 ? sum_surviving / static_cast<double>(out.surviving) : 0.5;
  return out;
}

}  // namespace sg
