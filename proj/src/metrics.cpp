#include "sparsegraph/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "sparsegraph/errors.hpp"
#include "sparsegraph/rng.hpp"

namespace sg {

double pair_density(const Graph& g, const std::vector<int>& u,
                    const std::vector<int>& w, const Rat& p) {
  if (u.empty() || w.empty())
    throw std::invalid_argument("pair_density: empty vertex set");
  if (p <= 0) throw std::invalid_argument("pair_density: density must be positive");
  std::vector<char> in_u(g.n, 0), in_w(g.n, 0);
  for (int v : u) in_u.at(v) = 1;
  for (int v : w) in_w.at(v) = 1;
  long long ordered = 0;
  for (auto [a, b] : g.edges) {
    if (in_u[a] && in_w[b]) ++ordered;
    if (in_u[b] && in_w[a]) ++ordered;
  }
  Rat d = Rat(static_cast<long>(ordered)) / (p * Rat(static_cast<long>(u.size())) *
                                             Rat(static_cast<long>(w.size())));
  return rat_to_double(d);
}

BlockMatrix kernel_to_blocks(const FiniteKernel& k) {
  BlockMatrix m;
  m.mass.resize(k.size());
  m.value.assign(k.size(), std::vector<double>(k.size()));
  for (int i = 0; i < k.size(); ++i) {
    m.mass[i] = rat_to_double(k.mu[i]);
    for (int j = 0; j < k.size(); ++j) m.value[i][j] = rat_to_double(k.kappa[i][j]);
  }
  return m;
}

BlockMatrix step_difference(const Graph& g1, const Graph& g2, const Rat& p) {
  if (g1.n != g2.n)
    throw std::invalid_argument("step_difference: vertex counts differ");
  const int n = g1.n;
  BlockMatrix m;
  m.mass.assign(n, 1.0 / n);
  m.value.assign(n, std::vector<double>(n, 0.0));
  double unit = rat_to_double(Rat(1) / p);
  for (auto [u, v] : g1.edges) {
    m.value[u][v] += unit;
    m.value[v][u] += unit;
  }
  for (auto [u, v] : g2.edges) {
    m.value[u][v] -= unit;
    m.value[v][u] -= unit;
  }
  return m;
}

namespace {

// weighted entries w[i][j] = value[i][j] * mass_i * mass_j
std::vector<std::vector<double>> weighted(const BlockMatrix& m) {
  const size_t n = m.mass.size();
  std::vector<std::vector<double>> w(n, std::vector<double>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) w[i][j] = m.value[i][j] * m.mass[i] * m.mass[j];
  return w;
}

double best_t_given_s(const std::vector<double>& colsum) {
  double pos = 0.0, neg = 0.0;
  for (double c : colsum) {
    if (c > 0) pos += c;
    if (c < 0) neg -= c;
  }
  return std::max(pos, neg);
}

}  // namespace

double cut_norm_exact(const BlockMatrix& m) {
  const size_t n = m.mass.size();
  if (n > 24) throw size_refusal("cut_norm_exact: more than 24 blocks");
  if (n == 0) return 0.0;
  auto w = weighted(m);

  // Gray-code walk over subsets S, keeping column sums over S.
  std::vector<double> colsum(n, 0.0);
  std::vector<char> in_s(n, 0);
  double best = 0.0;  // S empty gives 0
  const std::uint64_t total = 1ull << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    std::uint64_t gray_bit = step & (~step + 1);
    size_t i = static_cast<size_t>(std::countr_zero(gray_bit));
    double sign = in_s[i] ? -1.0 : 1.0;
    in_s[i] ^= 1;
    for (size_t j = 0; j < n; ++j) colsum[j] += sign * w[i][j];
    best = std::max(best, best_t_given_s(colsum));
  }
  return best;
}

double cut_norm_heuristic(const BlockMatrix& m, int restarts, std::uint64_t seed) {
  const size_t n = m.mass.size();
  if (n == 0 || restarts < 1) return 0.0;
  auto w = weighted(m);
  Rng rng = make_rng(seed);
  double best = 0.0;
  std::vector<char> s(n), t(n);
  for (int r = 0; r < restarts; ++r) {
    for (double sense : {1.0, -1.0}) {
      for (size_t i = 0; i < n; ++i) s[i] = static_cast<char>(rng() & 1);
      // alternate: best T given S, then best S given T, until stable
      for (int round = 0; round < 64; ++round) {
        bool changed = false;
        for (size_t j = 0; j < n; ++j) {
          double c = 0.0;
          for (size_t i = 0; i < n; ++i)
            if (s[i]) c += w[i][j];
          char want = sense * c > 0 ? 1 : 0;
          if (t[j] != want) {
            t[j] = want;
            changed = true;
          }
        }
        for (size_t i = 0; i < n; ++i) {
          double c = 0.0;
          for (size_t j = 0; j < n; ++j)
            if (t[j]) c += w[i][j];
          char want = sense * c > 0 ? 1 : 0;
          if (s[i] != want) {
            s[i] = want;
            changed = true;
          }
        }
        if (!changed) break;
      }
      double value = 0.0;
      for (size_t i = 0; i < n; ++i)
        if (s[i])
          for (size_t j = 0; j < n; ++j)
            if (t[j]) value += w[i][j];
      best = std::max(best, std::abs(value));
    }
  }
  return best;
}

namespace {

BlockMatrix permuted_difference(const Graph& g1, const Graph& g2,
                                const std::vector<int>& relabel, const Rat& p) {
  Graph h;
  h.n = g2.n;
  h.edges.reserve(g2.edges.size());
  for (auto [u, v] : g2.edges) {
    int a = relabel[u], b = relabel[v];
    h.edges.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(h.edges.begin(), h.edges.end());
  return step_difference(g1, h, p);
}

long long edit_cost(const Graph& g1, const Graph& g2,
                    const std::vector<int>& relabel) {
  std::vector<std::pair<int, int>> moved;
  moved.reserve(g2.edges.size());
  for (auto [u, v] : g2.edges) {
    int a = relabel[u], b = relabel[v];
    moved.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(moved.begin(), moved.end());
  std::vector<std::pair<int, int>> sym;
  std::set_symmetric_difference(g1.edges.begin(), g1.edges.end(), moved.begin(),
                                moved.end(), std::back_inserter(sym));
  return static_cast<long long>(sym.size());
}

void check_same_order(const Graph& g1, const Graph& g2) {
  if (g1.n != g2.n) throw std::invalid_argument("graph metric: vertex counts differ");
}

std::vector<int> degree_sorted_relabel(const Graph& g1, const Graph& g2) {
  auto rank = [](const Graph& g) {
    std::vector<int> deg(g.n, 0);
    for (auto [u, v] : g.edges) {
      ++deg[u];
      ++deg[v];
    }
    std::vector<int> order(g.n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return deg[a] > deg[b]; });
    return order;
  };
  std::vector<int> o1 = rank(g1), o2 = rank(g2), relabel(g1.n);
  for (int i = 0; i < g1.n; ++i) relabel[o2[i]] = o1[i];
  return relabel;
}

// Local search over relabellings minimizing `cost`, first-improvement swaps.
template <class Cost>
double permutation_descent(int n, std::vector<int> relabel, int restarts,
                           std::uint64_t seed, Cost&& cost) {
  Rng rng = make_rng(seed);
  double best = cost(relabel);
  for (int r = 0; r < restarts; ++r) {
    std::vector<int> cur = relabel;
    if (r > 0) std::shuffle(cur.begin(), cur.end(), rng);
    double cur_cost = cost(cur);
    bool improved = true;
    while (improved) {
      improved = false;
      for (int a = 0; a < n && !improved; ++a)
        for (int b = a + 1; b < n && !improved; ++b) {
          std::swap(cur[a], cur[b]);
          double c = cost(cur);
          if (c + 1e-15 < cur_cost) {
            cur_cost = c;
            improved = true;
          } else {
            std::swap(cur[a], cur[b]);
          }
        }
    }
    best = std::min(best, cur_cost);
  }
  return best;
}

}  // namespace

double cut_distance_exact(const Graph& g1, const Graph& g2, const Rat& p) {
  check_same_order(g1, g2);
  if (g1.n > 8) throw size_refusal("cut_distance_exact: more than 8 vertices");
  std::vector<int> relabel(g1.n);
  std::iota(relabel.begin(), relabel.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    best = std::min(best, cut_norm_exact(permuted_difference(g1, g2, relabel, p)));
  } while (std::next_permutation(relabel.begin(), relabel.end()));
  return best;
}

double cut_distance_heuristic(const Graph& g1, const Graph& g2, const Rat& p,
                              int restarts, std::uint64_t seed) {
  check_same_order(g1, g2);
  auto norm = [&](const BlockMatrix& d) {
    return d.mass.size() <= 24 ? cut_norm_exact(d)
                               : cut_norm_heuristic(d, 16, seed ^ 0x9e3779b9ull);
  };
  return permutation_descent(
      g1.n, degree_sorted_relabel(g1, g2), restarts, seed,
      [&](const std::vector<int>& relabel) {
        return norm(permuted_difference(g1, g2, relabel, p));
      });
}

double edit_distance_exact(const Graph& g1, const Graph& g2, const Rat& p) {
  check_same_order(g1, g2);
  if (g1.n > 8) throw size_refusal("edit_distance_exact: more than 8 vertices");
  std::vector<int> relabel(g1.n);
  std::iota(relabel.begin(), relabel.end(), 0);
  long long best = std::numeric_limits<long long>::max();
  do {
    best = std::min(best, edit_cost(g1, g2, relabel));
  } while (std::next_permutation(relabel.begin(), relabel.end()));
  Rat d = Rat(static_cast<long>(best)) / (p * Rat(g1.n) * Rat(g1.n));
  return rat_to_double(d);
}

double edit_distance_heuristic(const Graph& g1, const Graph& g2, const Rat& p,
                               int restarts, std::uint64_t seed) {
  check_same_order(g1, g2);
  double scale = rat_to_double(Rat(1) / (p * Rat(g1.n) * Rat(g1.n)));
  return scale * permutation_descent(
                     g1.n, degree_sorted_relabel(g1, g2), restarts, seed,
                     [&](const std::vector<int>& relabel) {
                       return static_cast<double>(edit_cost(g1, g2, relabel));
                     });
}

namespace {

long long count_maps(const Graph& pattern, const Graph& g, bool injective) {
  const int f = pattern.n;
  // BFS order so every later vertex has an earlier neighbour
  std::vector<std::vector<int>> padj(f);
  for (auto [u, v] : pattern.edges) {
    padj[u].push_back(v);
    padj[v].push_back(u);
  }
  std::vector<int> order{0}, anchor(f, -1), pos(f, -1);
  pos[0] = 0;
  for (size_t head = 0; head < order.size(); ++head)
    for (int nb : padj[order[head]])
      if (pos[nb] < 0) {
        pos[nb] = static_cast<int>(order.size());
        anchor[nb] = order[head];
        order.push_back(nb);
      }

  auto gadj = adjacency_lists(g);
  std::vector<std::vector<char>> gmat;
  const bool dense_ok = g.n <= 4096;
  if (dense_ok) {
    gmat.assign(g.n, std::vector<char>(g.n, 0));
    for (auto [u, v] : g.edges) gmat[u][v] = gmat[v][u] = 1;
  }
  auto connected = [&](int a, int b) {
    if (dense_ok) return gmat[a][b] != 0;
    return std::binary_search(gadj[a].begin(), gadj[a].end(), b);
  };

  std::vector<int> image(f, -1);
  std::vector<char> used(g.n, 0);
  long long count = 0;
  auto rec = [&](auto&& self, size_t depth) -> void {
    if (depth == order.size()) {
      ++count;
      return;
    }
    int u = order[depth];
    auto try_vertex = [&](int cand) {
      if (injective && used[cand]) return;
      for (int nb : padj[u]) {
        int img = image[nb];
        if (img >= 0 && !connected(cand, img)) return;
      }
      image[u] = cand;
      if (injective) used[cand] = 1;
      self(self, depth + 1);
      image[u] = -1;
      if (injective) used[cand] = 0;
    };
    if (anchor[u] < 0) {
      for (int cand = 0; cand < g.n; ++cand) try_vertex(cand);
    } else {
      for (int cand : gadj[image[anchor[u]]]) try_vertex(cand);
    }
  };
  rec(rec, 0);
  return count;
}

}  // namespace

SubgraphCounts subgraph_counts(const Graph& pattern, const Graph& g, const Rat& p) {
  if (pattern.n < 1) throw std::invalid_argument("subgraph_counts: empty pattern");
  if (pattern.n > 9) throw size_refusal("subgraph_counts: pattern above 9 vertices");
  std::vector<int> comp = components(pattern);
  if (*std::max_element(comp.begin(), comp.end()) != 0)
    throw std::invalid_argument("subgraph_counts: pattern must be connected");
  if (g.n < 1) throw std::invalid_argument("subgraph_counts: empty host graph");
  if (p <= 0) throw std::invalid_argument("subgraph_counts: density must be positive");

  SubgraphCounts out;
  out.hom = count_maps(pattern, g, false);
  out.emb = count_maps(pattern, g, true);
  out.s_tilde = static_cast<double>(out.emb) / g.n;

  const int e = static_cast<int>(pattern.edges.size());
  Rat pe(1);
  for (int i = 0; i < e; ++i) pe *= p;
  Rat nf(1), nfall(1);
  for (int i = 0; i < pattern.n; ++i) {
    nf *= Rat(g.n);
    nfall *= Rat(g.n - i);
  }
  out.t_hom = rat_to_double(Rat(static_cast<long>(out.hom)) / (nf * pe));
  out.t_emb = nfall == 0
                  ? 0.0
                  : rat_to_double(Rat(static_cast<long>(out.emb)) / (nfall * pe));
  return out;
}

double combine_product_metric(const std::vector<double>& coords) {
  double total = 0.0;
  double weight = 0.5;
  for (double d : coords) {
    if (d < 0) throw std::invalid_argument("combine_product_metric: negative coordinate");
    total += weight * std::min(d, 1.0);
    weight /= 2.0;
  }
  return total;
}

}  // namespace sg
