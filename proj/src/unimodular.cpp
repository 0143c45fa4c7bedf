#include "sparsegraph/unimodular.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "sparsegraph/canonical.hpp"
#include "sparsegraph/errors.hpp"

namespace sg {

namespace {

constexpr long kMaxTreeVertices = 2000000;

void validate_qt_matrix(const std::vector<std::vector<int>>& a) {
  if (a.empty()) throw std::invalid_argument("qt spec: empty matrix");
  const std::size_t m = a.size();
  for (const auto& row : a) {
    if (row.size() != m) throw std::invalid_argument("qt spec: matrix not square");
    for (int v : row) {
      if (v < 0) throw std::invalid_argument("qt spec: negative entry");
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if ((a[i][j] > 0) != (a[j][i] > 0)) {
        throw std::invalid_argument("qt spec: one-sided adjacency between types");
      }
    }
  }
}

std::string qt_serialize(const std::vector<std::vector<int>>& a) {
  std::ostringstream out;
  for (const auto& row : a) {
    for (int v : row) out << v << ',';
    out << ';';
  }
  return out.str();
}

int row_sum(const std::vector<int>& row) {
  int s = 0;
  for (int v : row) s += v;
  return s;
}

std::vector<std::string> colour_labels(const Graph& g, bool coloured) {
  std::vector<std::string> labels;
  if (!coloured) return labels;
  labels.resize(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) labels[static_cast<std::size_t>(i)] = std::to_string(g.types[static_cast<std::size_t>(i)]);
  return labels;
}

// Materialized view of one support atom, with complete balls out to the
// radius the caller asked for.
struct Material {
  Graph graph;
  int root = 0;
  std::vector<int> parent;
  bool coloured = false;
  std::vector<std::vector<int>> adj;
};

Material materialize(const LawAtom& atom, int radius) {
  Material m;
  if (atom.is_qt) {
    RootedGraph rg = build_qt_tree(atom.spec, atom.root_type, radius + 1);
    m.graph = std::move(rg.graph);
    m.root = rg.root;
    m.parent = std::move(rg.parent);
    m.coloured = false;
  } else {
    if (atom.horizon >= 0 && atom.horizon < radius + 1) {
      throw unsupported_law("support depth insufficient for rule radius");
    }
    m.graph = atom.graph;
    m.root = atom.root;
    m.parent = atom.parent;
    m.coloured = atom.coloured;
  }
  m.adj = adjacency_lists(m.graph);
  return m;
}

std::string pair_code(const Material& m, int x, int y, int radius) {
  const std::vector<int>* colours = m.coloured ? &m.graph.types : nullptr;
  return doubly_rooted_code(m.adj, colours, x, y, radius);
}

void validate_law(const FiniteSupportLaw& pi) {
  if (pi.support.empty()) throw std::invalid_argument("law: empty support");
  if (pi.support.size() != pi.weights.size()) {
    throw std::invalid_argument("law: support and weight counts differ");
  }
  Rat total = 0;
  for (const Rat& w : pi.weights) {
    if (w < 0) throw std::invalid_argument("law: negative weight");
    total += w;
  }
  if (total != 1) throw std::invalid_argument("law: weights must sum to one");
  for (const LawAtom& atom : pi.support) {
    if (atom.is_qt) {
      validate_qt_matrix(atom.spec.a);
      if (atom.root_type < 0 || atom.root_type >= static_cast<int>(atom.spec.a.size())) {
        throw std::invalid_argument("law: root type out of range");
      }
    } else {
      if (atom.graph.n <= 0) throw std::invalid_argument("law: empty support graph");
      if (atom.root < 0 || atom.root >= atom.graph.n) {
        throw std::invalid_argument("law: root out of range");
      }
      if (atom.coloured && atom.graph.types.size() != static_cast<std::size_t>(atom.graph.n)) {
        throw std::invalid_argument("law: coloured atom without vertex colours");
      }
    }
  }
}

int atom_root_degree(const LawAtom& atom) {
  if (atom.is_qt) return row_sum(atom.spec.a[static_cast<std::size_t>(atom.root_type)]);
  if (atom.horizon == 0) throw unsupported_law("support depth insufficient for root degree");
  const auto adj = adjacency_lists(atom.graph);
  return static_cast<int>(adj[static_cast<std::size_t>(atom.root)].size());
}

std::string atom_key(const LawAtom& atom) {
  if (atom.is_qt) {
    auto [cspec, type_map] = canonical_qt_spec(atom.spec);
    return "q!" + qt_serialize(cspec.a) + "#" +
           std::to_string(type_map[static_cast<std::size_t>(atom.root_type)]);
  }
  const auto adj = adjacency_lists(atom.graph);
  const auto labels = colour_labels(atom.graph, atom.coloured);
  const std::vector<std::string>* lab = labels.empty() ? nullptr : &labels;
  return "t!" + std::to_string(atom.horizon) + "!" +
         rooted_graph_code(adj, atom.root, lab);
}

FiniteSupportLaw assemble(std::map<std::string, std::pair<LawAtom, Rat>>& acc) {
  FiniteSupportLaw law;
  for (auto& [key, entry] : acc) {
    if (entry.second == 0) continue;
    law.support.push_back(std::move(entry.first));
    law.weights.push_back(entry.second);
  }
  return law;
}

}  // namespace

QtSpec make_qt_spec(std::vector<std::vector<int>> a) {
  validate_qt_matrix(a);
  return QtSpec{std::move(a)};
}

std::pair<QtSpec, std::vector<int>> canonical_qt_spec(const QtSpec& spec) {
  validate_qt_matrix(spec.a);
  const std::size_t m = spec.a.size();
  std::vector<int> cls(m, 0);
  for (std::size_t round = 0; round <= m; ++round) {
    std::vector<std::string> key(m);
    for (std::size_t i = 0; i < m; ++i) {
      std::map<int, long> sums;
      for (std::size_t j = 0; j < m; ++j) {
        if (spec.a[i][j] > 0) sums[cls[j]] += spec.a[i][j];
      }
      std::ostringstream out;
      out << cls[i] << '|';
      for (const auto& [c, v] : sums) out << c << ':' << v << ';';
      key[i] = out.str();
    }
    std::vector<std::string> sorted = key;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> next(m);
    for (std::size_t i = 0; i < m; ++i) {
      next[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), key[i]) -
                                 sorted.begin());
    }
    if (next == cls) break;
    cls = next;
  }
  const int k = *std::max_element(cls.begin(), cls.end()) + 1;
  std::vector<std::vector<int>> q(static_cast<std::size_t>(k),
                                  std::vector<int>(static_cast<std::size_t>(k), 0));
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  for (std::size_t i = 0; i < m; ++i) {
    const auto c = static_cast<std::size_t>(cls[i]);
    if (seen[c]) continue;
    seen[c] = true;
    for (std::size_t j = 0; j < m; ++j) q[c][static_cast<std::size_t>(cls[j])] += spec.a[i][j];
  }
  return {QtSpec{std::move(q)}, std::move(cls)};
}

bool qt_spec_equal(const QtSpec& s1, const QtSpec& s2) {
  return qt_serialize(canonical_qt_spec(s1).first.a) ==
         qt_serialize(canonical_qt_spec(s2).first.a);
}

RootedGraph build_qt_tree(const QtSpec& spec, int root_type, int depth) {
  validate_qt_matrix(spec.a);
  const int m = static_cast<int>(spec.a.size());
  if (root_type < 0 || root_type >= m) throw std::invalid_argument("root type out of range");
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");

  std::vector<int> type{root_type};
  std::vector<int> parent{-1};
  std::vector<int> level{0};
  std::vector<std::pair<int, int>> edges;
  for (std::size_t v = 0; v < type.size(); ++v) {
    if (level[v] >= depth) continue;
    const auto& row = spec.a[static_cast<std::size_t>(type[v])];
    for (int j = 0; j < m; ++j) {
      int count = row[static_cast<std::size_t>(j)];
      if (parent[v] >= 0 && type[static_cast<std::size_t>(parent[v])] == j) count -= 1;
      for (int c = 0; c < count; ++c) {
        if (static_cast<long>(type.size()) >= kMaxTreeVertices) {
          throw size_refusal("quasi-transitive tree would exceed the vertex limit");
        }
        const int w = static_cast<int>(type.size());
        type.push_back(j);
        parent.push_back(static_cast<int>(v));
        level.push_back(level[v] + 1);
        edges.emplace_back(static_cast<int>(v), w);
      }
    }
  }
  RootedGraph rg;
  rg.graph = make_graph(static_cast<int>(type.size()), std::move(edges), type);
  rg.root = 0;
  rg.parent = std::move(parent);
  rg.horizon = depth;
  return rg;
}

RootedGraph grandmother_graph(int depth) {
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
  if (depth > 10) throw size_refusal("grandmother ball would exceed the vertex limit");
  const int reach = 2 * depth;

  // Oriented 3-regular tree: every vertex has one parent and two children.
  // Materialize everything within tree distance `reach` of the root: the
  // ancestor chain plus descendants of each materialized vertex.
  std::vector<int> parent;
  std::vector<int> dist;
  std::vector<int> child_count;
  parent.push_back(-1);
  dist.push_back(0);
  child_count.push_back(0);
  int prev = 0;
  for (int k = 1; k <= reach; ++k) {
    const int v = static_cast<int>(parent.size());
    parent.push_back(-1);
    dist.push_back(k);
    child_count.push_back(1);
    parent[static_cast<std::size_t>(prev)] = v;
    prev = v;
  }
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (dist[v] >= reach) continue;
    while (child_count[v] < 2) {
      const int w = static_cast<int>(parent.size());
      parent.push_back(static_cast<int>(v));
      dist.push_back(dist[v] + 1);
      child_count.push_back(0);
      child_count[v] += 1;
      (void)w;
    }
  }

  std::vector<std::pair<int, int>> edges;
  for (std::size_t v = 0; v < parent.size(); ++v) {
    const int p = parent[v];
    if (p < 0) continue;
    edges.emplace_back(static_cast<int>(v), p);
    const int gp = parent[static_cast<std::size_t>(p)];
    if (gp >= 0) edges.emplace_back(static_cast<int>(v), gp);
  }
  const Graph full = make_graph(static_cast<int>(parent.size()), std::move(edges));
  const Ball ball = extract_ball(adjacency_lists(full), 0, depth);

  const int nb = static_cast<int>(ball.vertex.size());
  std::vector<int> local(parent.size(), -1);
  for (int i = 0; i < nb; ++i) local[static_cast<std::size_t>(ball.vertex[static_cast<std::size_t>(i)])] = i;
  std::vector<std::pair<int, int>> ball_edges;
  for (int u = 0; u < nb; ++u) {
    for (int w : ball.adj[static_cast<std::size_t>(u)]) {
      if (u < w) ball_edges.emplace_back(u, w);
    }
  }
  std::vector<int> ball_parent(static_cast<std::size_t>(nb), -1);
  for (int i = 0; i < nb; ++i) {
    const int p = parent[static_cast<std::size_t>(ball.vertex[static_cast<std::size_t>(i)])];
    if (p >= 0) ball_parent[static_cast<std::size_t>(i)] = local[static_cast<std::size_t>(p)];
  }
  RootedGraph rg;
  rg.graph = make_graph(nb, std::move(ball_edges));
  rg.root = 0;
  rg.parent = std::move(ball_parent);
  rg.horizon = depth;
  return rg;
}

LawAtom make_atom(const RootedGraph& rg) {
  LawAtom atom;
  atom.graph = rg.graph;
  atom.root = rg.root;
  atom.parent = rg.parent;
  atom.horizon = rg.horizon;
  return atom;
}

FiniteSupportLaw point_mass(LawAtom atom) {
  FiniteSupportLaw law;
  law.support.push_back(std::move(atom));
  law.weights.emplace_back(1);
  validate_law(law);
  return law;
}

FiniteSupportLaw qt_law(const QtSpec& spec, const std::vector<Rat>& weights) {
  validate_qt_matrix(spec.a);
  if (weights.size() != spec.a.size()) {
    throw std::invalid_argument("qt law: one weight per type required");
  }
  FiniteSupportLaw law;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] == 0) continue;
    LawAtom atom;
    atom.is_qt = true;
    atom.spec = spec;
    atom.root_type = static_cast<int>(i);
    law.support.push_back(std::move(atom));
    law.weights.push_back(weights[i]);
  }
  validate_law(law);
  return law;
}

FiniteSupportLaw law_from_unrooted_tree(const Graph& tree) {
  if (tree.n <= 0) throw std::invalid_argument("empty tree");
  if (static_cast<int>(tree.edges.size()) != tree.n - 1 ||
      largest_component_size(tree) != static_cast<std::size_t>(tree.n)) {
    throw std::invalid_argument("graph is not a tree");
  }
  std::map<std::string, std::pair<LawAtom, Rat>> acc;
  const Rat share = Rat(1) / Rat(tree.n);
  for (int v = 0; v < tree.n; ++v) {
    LawAtom atom;
    atom.graph = tree;
    atom.graph.types.clear();
    atom.root = v;
    const std::string key = atom_key(atom);
    auto it = acc.find(key);
    if (it == acc.end()) {
      acc.emplace(key, std::make_pair(std::move(atom), share));
    } else {
      it->second.second += share;
    }
  }
  FiniteSupportLaw law = assemble(acc);
  validate_law(law);
  return law;
}

FiniteSupportLaw empirical_ball_law(const Graph& g, int depth,
                                    const std::vector<int>* colouring) {
  if (g.n <= 0) throw std::invalid_argument("empty graph");
  if (depth < 1) throw std::invalid_argument("depth must be positive");
  if (colouring != nullptr) {
    if (colouring->size() != static_cast<std::size_t>(g.n)) {
      throw std::invalid_argument("colouring size mismatch");
    }
    for (int c : *colouring) {
      if (c < 0) throw std::invalid_argument("negative colour");
    }
  }
  const auto adj = adjacency_lists(g);
  std::map<std::string, std::pair<LawAtom, Rat>> acc;
  const Rat share = Rat(1) / Rat(g.n);
  for (int v = 0; v < g.n; ++v) {
    const Ball ball = extract_ball(adj, v, depth);
    const int nb = static_cast<int>(ball.vertex.size());
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < nb; ++u) {
      for (int w : ball.adj[static_cast<std::size_t>(u)]) {
        if (u < w) edges.emplace_back(u, w);
      }
    }
    std::vector<int> types;
    if (colouring != nullptr) {
      types.resize(static_cast<std::size_t>(nb));
      for (int i = 0; i < nb; ++i) {
        types[static_cast<std::size_t>(i)] =
            (*colouring)[static_cast<std::size_t>(ball.vertex[static_cast<std::size_t>(i)])];
      }
    }
    LawAtom atom;
    atom.graph = make_graph(nb, std::move(edges), std::move(types));
    atom.root = 0;
    atom.horizon = depth;
    atom.coloured = colouring != nullptr;
    const std::string key = atom_key(atom);
    auto it = acc.find(key);
    if (it == acc.end()) {
      acc.emplace(key, std::make_pair(std::move(atom), share));
    } else {
      it->second.second += share;
    }
  }
  FiniteSupportLaw law = assemble(acc);
  validate_law(law);
  return law;
}

bool laws_equal(const FiniteSupportLaw& a, const FiniteSupportLaw& b) {
  validate_law(a);
  validate_law(b);
  std::map<std::string, Rat> ma;
  std::map<std::string, Rat> mb;
  for (std::size_t i = 0; i < a.support.size(); ++i) {
    if (a.weights[i] != 0) ma[atom_key(a.support[i])] += a.weights[i];
  }
  for (std::size_t i = 0; i < b.support.size(); ++i) {
    if (b.weights[i] != 0) mb[atom_key(b.support[i])] += b.weights[i];
  }
  return ma == mb;
}

std::string doubly_rooted_code(const std::vector<std::vector<int>>& adj,
                               const std::vector<int>* colours, int x, int y,
                               int radius) {
  if (radius < 1) throw std::invalid_argument("rule radius must be positive");
  const Ball ball = extract_ball(adj, x, radius);
  std::vector<std::string> labels(ball.vertex.size());
  bool found = false;
  for (std::size_t i = 0; i < ball.vertex.size(); ++i) {
    const int global = ball.vertex[i];
    if (colours != nullptr) labels[i] = std::to_string((*colours)[static_cast<std::size_t>(global)]);
    if (global == y) {
      labels[i] += "|m";
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("marked vertex outside the ball");
  return ball_code(ball, &labels);
}

LocalRule rule_from_predicate(const FiniteSupportLaw& pi, int radius,
                              const PairPredicate& pred) {
  validate_law(pi);
  if (radius < 1) throw std::invalid_argument("rule radius must be positive");
  LocalRule rule;
  rule.radius = radius;
  for (const LawAtom& atom : pi.support) {
    const Material m = materialize(atom, radius);
    for (int y : m.adj[static_cast<std::size_t>(m.root)]) {
      if (pred(m.graph, m.parent, m.root, y)) {
        rule.accepted.insert(pair_code(m, m.root, y, radius));
      }
      if (pred(m.graph, m.parent, y, m.root)) {
        rule.accepted.insert(pair_code(m, y, m.root, radius));
      }
    }
  }
  return rule;
}

InvolutionResult involution_check(const FiniteSupportLaw& pi,
                                  const LocalRule& rule, double tol) {
  validate_law(pi);
  if (rule.radius < 1) throw std::invalid_argument("rule radius must be positive");
  const auto accepts = [&](const std::string& code) {
    return rule.accept_all || rule.accepted.count(code) > 0;
  };
  Rat lhs = 0;
  Rat rhs = 0;
  for (std::size_t i = 0; i < pi.support.size(); ++i) {
    const Material m = materialize(pi.support[i], rule.radius);
    long count_l = 0;
    long count_r = 0;
    for (int y : m.adj[static_cast<std::size_t>(m.root)]) {
      if (accepts(pair_code(m, m.root, y, rule.radius))) ++count_l;
      if (accepts(pair_code(m, y, m.root, rule.radius))) ++count_r;
    }
    lhs += pi.weights[i] * Rat(count_l);
    rhs += pi.weights[i] * Rat(count_r);
  }
  InvolutionResult out;
  out.lhs = rat_to_double(lhs);
  out.rhs = rat_to_double(rhs);
  Rat diff = lhs - rhs;
  if (diff < 0) diff = -diff;
  out.invariant = rat_to_double(diff) <= tol;
  return out;
}

std::vector<Violation> scan_violations(const FiniteSupportLaw& pi,
                                       int max_radius, double tol) {
  validate_law(pi);
  if (max_radius < 1) throw std::invalid_argument("max radius must be positive");
  std::vector<Violation> out;
  for (int r = 1; r <= max_radius; ++r) {
    std::map<std::string, std::pair<Rat, Rat>> acc;
    for (std::size_t i = 0; i < pi.support.size(); ++i) {
      const Material m = materialize(pi.support[i], r);
      for (int y : m.adj[static_cast<std::size_t>(m.root)]) {
        acc[pair_code(m, m.root, y, r)].first += pi.weights[i];
        acc[pair_code(m, y, m.root, r)].second += pi.weights[i];
      }
    }
    for (const auto& [code, sides] : acc) {
      Rat diff = sides.first - sides.second;
      if (diff < 0) diff = -diff;
      if (rat_to_double(diff) > tol) {
        Violation v;
        v.rule.radius = r;
        v.rule.accepted.insert(code);
        v.lhs = rat_to_double(sides.first);
        v.rhs = rat_to_double(sides.second);
        out.push_back(std::move(v));
      }
    }
  }
  return out;
}

std::pair<FiniteSupportLaw, FiniteSupportLaw> size_biased_shift(
    const FiniteSupportLaw& pi) {
  validate_law(pi);
  Rat mean_degree = 0;
  std::vector<int> degree(pi.support.size(), 0);
  for (std::size_t i = 0; i < pi.support.size(); ++i) {
    degree[i] = atom_root_degree(pi.support[i]);
    mean_degree += pi.weights[i] * Rat(degree[i]);
  }
  if (mean_degree == 0) {
    throw std::invalid_argument("size bias needs positive expected root degree");
  }

  FiniteSupportLaw tilde;
  for (std::size_t i = 0; i < pi.support.size(); ++i) {
    const Rat w = pi.weights[i] * Rat(degree[i]) / mean_degree;
    if (w == 0) continue;
    tilde.support.push_back(pi.support[i]);
    tilde.weights.push_back(w);
  }
  validate_law(tilde);

  std::map<std::string, std::pair<LawAtom, Rat>> acc;
  const auto add = [&](LawAtom atom, const Rat& w) {
    if (w == 0) return;
    const std::string key = atom_key(atom);
    auto it = acc.find(key);
    if (it == acc.end()) {
      acc.emplace(key, std::make_pair(std::move(atom), w));
    } else {
      it->second.second += w;
    }
  };
  for (std::size_t i = 0; i < tilde.support.size(); ++i) {
    const LawAtom& atom = tilde.support[i];
    const Rat& w = tilde.weights[i];
    if (atom.is_qt) {
      const auto& row = atom.spec.a[static_cast<std::size_t>(atom.root_type)];
      const int d = row_sum(row);
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j] == 0) continue;
        LawAtom moved = atom;
        moved.root_type = static_cast<int>(j);
        add(std::move(moved), w * Rat(row[j]) / Rat(d));
      }
    } else {
      if (atom.horizon >= 0) {
        throw unsupported_law("truncated support is not closed under re-rooting");
      }
      const auto adj = adjacency_lists(atom.graph);
      const auto& nbrs = adj[static_cast<std::size_t>(atom.root)];
      for (int y : nbrs) {
        LawAtom moved = atom;
        moved.root = y;
        add(std::move(moved), w / Rat(static_cast<long>(nbrs.size())));
      }
    }
  }
  FiniteSupportLaw shifted = assemble(acc);
  validate_law(shifted);
  return {std::move(tilde), std::move(shifted)};
}

}  // namespace sg
