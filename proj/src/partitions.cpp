#include "sparsegraph/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "sparsegraph/errors.hpp"
#include "sparsegraph/rng.hpp"

namespace sg {

DensityMatrix partition_matrix(const Graph& g, const std::vector<int>& part,
                               int k, const Rat& p) {
  if (static_cast<int>(part.size()) != g.n)
    throw std::invalid_argument("partition_matrix: one part id per vertex required");
  if (p <= 0) throw std::invalid_argument("partition_matrix: density must be positive");
  std::vector<long long> size(k, 0);
  for (int a : part) {
    if (a < 0 || a >= k) throw std::invalid_argument("partition_matrix: part id out of range");
    ++size[a];
  }
  for (int a = 0; a < k; ++a)
    if (size[a] == 0) throw std::invalid_argument("partition_matrix: empty part");

  std::vector<std::vector<long long>> count(k, std::vector<long long>(k, 0));
  for (auto [u, v] : g.edges) {
    ++count[part[u]][part[v]];
    ++count[part[v]][part[u]];
  }
  DensityMatrix m(k, std::vector<double>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      m[a][b] = rat_to_double(Rat(static_cast<long>(count[a][b])) /
                              (p * Rat(static_cast<long>(size[a])) *
                               Rat(static_cast<long>(size[b]))));
  return m;
}

namespace {

void dedup(PartitionSpectrum& s) {
  std::sort(s.matrices.begin(), s.matrices.end());
  s.matrices.erase(std::unique(s.matrices.begin(), s.matrices.end()),
                   s.matrices.end());
}

}  // namespace

PartitionSpectrum partition_spectrum_exact(const Graph& g, int k, const Rat& p,
                                           long long budget) {
  if (k < 1) throw std::invalid_argument("partition_spectrum: k must be >= 1");
  PartitionSpectrum out;
  out.k = k;
  out.exact = true;
  if (k > g.n) return out;

  const int q = g.n / k;
  const int r = g.n % k;  // parts of size q+1
  std::vector<int> part(g.n, -1), count(k, 0);
  auto rec = [&](auto&& self, int v) -> void {
    if (v == g.n) {
      ++out.multiset_size;
      if (out.multiset_size > budget)
        throw size_refusal("partition_spectrum_exact: balanced partitions exceed the budget");
      out.matrices.push_back(partition_matrix(g, part, k, p));
      return;
    }
    int deficit = 0, surplus = 0;
    for (int a = 0; a < k; ++a) {
      deficit += std::max(q - count[a], 0);
      surplus += std::max(count[a] - q, 0);
    }
    if (deficit > g.n - v || surplus > r) return;
    for (int a = 0; a < k; ++a) {
      if (count[a] == q + 1) continue;
      if (count[a] == q && surplus == r) continue;
      part[v] = a;
      ++count[a];
      self(self, v + 1);
      --count[a];
      part[v] = -1;
    }
  };
  rec(rec, 0);
  dedup(out);
  return out;
}

namespace {

// Incremental swap state over an ordered balanced partition.
struct SwapState {
  const std::vector<std::vector<int>>* adj;
  int k;
  std::vector<int> part;
  std::vector<std::vector<long long>> count;       // ordered pair counts
  std::vector<std::vector<int>> vertex_to_part;    // [v][a] neighbours in a

  void init(const Graph& g, std::vector<int> assignment,
            const std::vector<std::vector<int>>& adjacency, int parts) {
    adj = &adjacency;
    k = parts;
    part = std::move(assignment);
    count.assign(k, std::vector<long long>(k, 0));
    vertex_to_part.assign(part.size(), std::vector<int>(k, 0));
    for (auto [u, v] : g.edges) {
      ++count[part[u]][part[v]];
      ++count[part[v]][part[u]];
      ++vertex_to_part[u][part[v]];
      ++vertex_to_part[v][part[u]];
    }
  }

  void move_vertex(int v, int to) {
    int from = part[v];
    for (int nb : (*adj)[v]) {
      count[from][part[nb]] -= 1;
      count[part[nb]][from] -= 1;
      count[to][part[nb]] += 1;
      count[part[nb]][to] += 1;
      vertex_to_part[nb][from] -= 1;
      vertex_to_part[nb][to] += 1;
    }
    part[v] = to;
  }

  // swap the parts of u and v (must differ)
  void swap_vertices(int u, int v) {
    int a = part[u], b = part[v];
    move_vertex(u, b);
    move_vertex(v, a);
  }

  double objective(const std::vector<std::vector<double>>& coeff) const {
    double total = 0.0;
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) total += coeff[a][b] * static_cast<double>(count[a][b]);
    return total;
  }
};

std::vector<int> balanced_random_assignment(int n, int k, Rng& rng) {
  std::vector<int> part(n);
  for (int v = 0; v < n; ++v) part[v] = v % k;
  std::shuffle(part.begin(), part.end(), rng);
  return part;
}

// Proper-2-colouring attempt by per-component BFS parity, then rebalanced by
// moving cheapest vertices from the larger side.
std::vector<int> bfs_parity_assignment(const Graph& g,
                                       const std::vector<std::vector<int>>& adj,
                                       Rng& rng) {
  std::vector<int> colour(g.n, -1);
  std::vector<int> order(g.n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (int root : order) {
    if (colour[root] >= 0) continue;
    colour[root] = 0;
    std::queue<int> bfs;
    bfs.push(root);
    while (!bfs.empty()) {
      int v = bfs.front();
      bfs.pop();
      for (int nb : adj[v])
        if (colour[nb] < 0) {
          colour[nb] = 1 - colour[v];
          bfs.push(nb);
        }
    }
  }
  long zeros = std::count(colour.begin(), colour.end(), 0);
  long target0 = (g.n + 1) / 2;
  int from = zeros > target0 ? 0 : 1;
  long excess = zeros > target0 ? zeros - target0 : target0 - zeros;
  // move vertices whose side-switch adds the fewest same-part edges
  std::vector<std::pair<int, int>> cost;
  for (int v = 0; v < g.n; ++v)
    if (colour[v] == from) {
      int same = 0, other = 0;
      for (int nb : adj[v]) (colour[nb] == from ? same : other) += 1;
      cost.push_back({other - same, v});
    }
  std::sort(cost.begin(), cost.end());
  for (long i = 0; i < excess && i < static_cast<long>(cost.size()); ++i)
    colour[cost[i].second] = 1 - from;
  return colour;
}

}  // namespace

PartitionSpectrum partition_spectrum_search(const Graph& g, int k, const Rat& p,
                                            long long budget, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("partition_spectrum: k must be >= 1");
  PartitionSpectrum out;
  out.k = k;
  out.exact = false;
  if (k > g.n) return out;

  auto adj = adjacency_lists(g);
  Rng rng = make_rng(seed);

  auto record = [&](const std::vector<int>& part) {
    out.matrices.push_back(partition_matrix(g, part, k, p));
    ++out.multiset_size;
  };

  // plain samples: a quarter of the budget
  long long samples = std::max<long long>(1, std::min<long long>(budget / 4, 200));
  for (long long s = 0; s < samples; ++s) record(balanced_random_assignment(g.n, k, rng));

  // objectives: each entry in both senses, then random functionals
  std::vector<std::vector<std::vector<double>>> objectives;
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b)
      for (double sense : {1.0, -1.0}) {
        std::vector<std::vector<double>> c(k, std::vector<double>(k, 0.0));
        c[a][b] += sense;
        c[b][a] += sense;
        objectives.push_back(std::move(c));
      }
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int extra = 0; extra < 4; ++extra) {
    std::vector<std::vector<double>> c(k, std::vector<double>(k, 0.0));
    for (int a = 0; a < k; ++a)
      for (int b = a; b < k; ++b) c[a][b] = c[b][a] = unit(rng);
    objectives.push_back(std::move(c));
  }
  // minimize total within-part density (sum of diagonal entries)
  {
    std::vector<std::vector<double>> c(k, std::vector<double>(k, 0.0));
    for (int a = 0; a < k; ++a) c[a][a] = -1.0;
    objectives.push_back(std::move(c));
  }

  long long per_objective =
      std::max<long long>(16, (budget - samples) / static_cast<long long>(objectives.size()));
  std::uniform_int_distribution<int> pick(0, g.n - 1);

  for (size_t o = 0; o < objectives.size(); ++o) {
    std::vector<int> start;
    if (k == 2 && o + 1 == objectives.size())
      start = bfs_parity_assignment(g, adj, rng);
    else
      start = balanced_random_assignment(g.n, k, rng);
    SwapState state;
    state.init(g, std::move(start), adj, k);
    double value = state.objective(objectives[o]);
    for (long long it = 0; it < per_objective; ++it) {
      int u = pick(rng), v = pick(rng);
      if (state.part[u] == state.part[v]) continue;
      state.swap_vertices(u, v);
      double next = state.objective(objectives[o]);
      if (next > value + 1e-15)
        value = next;
      else
        state.swap_vertices(u, v);
    }
    record(state.part);
  }
  dedup(out);
  return out;
}

namespace {

double linf(const DensityMatrix& a, const DensityMatrix& b) {
  double best = 0.0;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j)
      best = std::max(best, std::abs(a[i][j] - b[i][j]));
  return best;
}

// Max flow (Dinic) on a small bipartite network.
struct Flow {
  struct Edge {
    int to;
    long long cap;
    size_t rev;
  };
  std::vector<std::vector<Edge>> graph;
  explicit Flow(int nodes) : graph(nodes) {}
  void add(int from, int to, long long cap) {
    graph[from].push_back({to, cap, graph[to].size()});
    graph[to].push_back({from, 0, graph[from].size() - 1});
  }
  bool level(int s, int t, std::vector<int>& lvl) {
    std::fill(lvl.begin(), lvl.end(), -1);
    std::queue<int> bfs;
    lvl[s] = 0;
    bfs.push(s);
    while (!bfs.empty()) {
      int v = bfs.front();
      bfs.pop();
      for (const auto& e : graph[v])
        if (e.cap > 0 && lvl[e.to] < 0) {
          lvl[e.to] = lvl[v] + 1;
          bfs.push(e.to);
        }
    }
    return lvl[t] >= 0;
  }
  long long push(int v, int t, long long f, const std::vector<int>& lvl,
                 std::vector<size_t>& iter) {
    if (v == t) return f;
    for (; iter[v] < graph[v].size(); ++iter[v]) {
      Edge& e = graph[v][iter[v]];
      if (e.cap > 0 && lvl[v] < lvl[e.to]) {
        long long d = push(e.to, t, std::min(f, e.cap), lvl, iter);
        if (d > 0) {
          e.cap -= d;
          graph[e.to][e.rev].cap += d;
          return d;
        }
      }
    }
    return 0;
  }
  long long max_flow(int s, int t) {
    long long total = 0;
    std::vector<int> lvl(graph.size());
    while (level(s, t, lvl)) {
      std::vector<size_t> iter(graph.size(), 0);
      while (long long f = push(s, t, std::numeric_limits<long long>::max(), lvl, iter))
        total += f;
    }
    return total;
  }
};

// Feasibility of a fractional bijection using only pairs with distance <= d:
// each x supplies |Y| units, each y absorbs |X| units.
bool matchable(const std::vector<DensityMatrix>& x,
               const std::vector<DensityMatrix>& y,
               const std::vector<std::vector<double>>& dist, double d) {
  int nx = static_cast<int>(x.size()), ny = static_cast<int>(y.size());
  Flow flow(nx + ny + 2);
  int source = nx + ny, sink = nx + ny + 1;
  for (int i = 0; i < nx; ++i) flow.add(source, i, ny);
  for (int j = 0; j < ny; ++j) flow.add(nx + j, sink, nx);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      if (dist[i][j] <= d) flow.add(i, nx + j, std::numeric_limits<long long>::max() / 4);
  return flow.max_flow(source, sink) ==
         static_cast<long long>(nx) * static_cast<long long>(ny);
}

// Min-cost transport of |X|*|Y| units (successive shortest paths with
// Bellman-Ford; the network is tiny).
double transport_cost(const std::vector<DensityMatrix>& x,
                      const std::vector<DensityMatrix>& y,
                      const std::vector<std::vector<double>>& dist) {
  int nx = static_cast<int>(x.size()), ny = static_cast<int>(y.size());
  int nodes = nx + ny + 2, source = nx + ny, sink = nx + ny + 1;
  struct Edge {
    int to;
    long long cap;
    double cost;
    size_t rev;
  };
  std::vector<std::vector<Edge>> graph(nodes);
  auto add = [&](int from, int to, long long cap, double cost) {
    graph[from].push_back({to, cap, cost, graph[to].size()});
    graph[to].push_back({from, 0, -cost, graph[from].size() - 1});
  };
  for (int i = 0; i < nx; ++i) add(source, i, ny, 0.0);
  for (int j = 0; j < ny; ++j) add(nx + j, sink, nx, 0.0);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) add(i, nx + j, std::min(nx, ny), dist[i][j]);

  long long need = static_cast<long long>(nx) * static_cast<long long>(ny);
  double total = 0.0;
  while (need > 0) {
    std::vector<double> d(nodes, std::numeric_limits<double>::infinity());
    std::vector<int> pv(nodes, -1), pe(nodes, -1);
    d[source] = 0.0;
    for (int round = 0; round < nodes; ++round)
      for (int v = 0; v < nodes; ++v) {
        if (!std::isfinite(d[v])) continue;
        for (size_t idx = 0; idx < graph[v].size(); ++idx) {
          const Edge& e = graph[v][idx];
          if (e.cap > 0 && d[v] + e.cost < d[e.to] - 1e-15) {
            d[e.to] = d[v] + e.cost;
            pv[e.to] = v;
            pe[e.to] = static_cast<int>(idx);
          }
        }
      }
    if (!std::isfinite(d[sink]))
      throw std::logic_error("set_distance: transport network infeasible");
    long long f = need;
    for (int v = sink; v != source; v = pv[v])
      f = std::min(f, graph[pv[v]][pe[v]].cap);
    for (int v = sink; v != source; v = pv[v]) {
      Edge& e = graph[pv[v]][pe[v]];
      e.cap -= f;
      graph[e.to][e.rev].cap += f;
    }
    total += d[sink] * static_cast<double>(f);
    need -= f;
  }
  return total / (static_cast<double>(nx) * static_cast<double>(ny));
}

}  // namespace

double set_distance(const std::vector<DensityMatrix>& x,
                    const std::vector<DensityMatrix>& y, SetDistanceKind kind,
                    double empty_value) {
  if (x.empty() && y.empty()) {
    if (kind == SetDistanceKind::hausdorff)
      throw std::invalid_argument("set_distance: both sets empty");
    return 0.0;
  }
  if (x.empty() || y.empty()) return empty_value;

  std::vector<std::vector<double>> dist(x.size(), std::vector<double>(y.size()));
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < y.size(); ++j) dist[i][j] = linf(x[i], y[j]);

  switch (kind) {
    case SetDistanceKind::hausdorff: {
      double worst = 0.0;
      for (size_t i = 0; i < x.size(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < y.size(); ++j) nearest = std::min(nearest, dist[i][j]);
        worst = std::max(worst, nearest);
      }
      for (size_t j = 0; j < y.size(); ++j) {
        double nearest = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < x.size(); ++i) nearest = std::min(nearest, dist[i][j]);
        worst = std::max(worst, nearest);
      }
      return worst;
    }
    case SetDistanceKind::matching: {
      std::vector<double> candidates;
      for (const auto& row : dist)
        for (double d : row) candidates.push_back(d);
      std::sort(candidates.begin(), candidates.end());
      candidates.erase(std::unique(candidates.begin(), candidates.end()),
                       candidates.end());
      size_t lo = 0, hi = candidates.size() - 1;
      while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (matchable(x, y, dist, candidates[mid]))
          hi = mid;
        else
          lo = mid + 1;
      }
      return candidates[lo];
    }
    case SetDistanceKind::weighted_matching:
      return transport_cost(x, y, dist);
  }
  throw std::logic_error("set_distance: unknown kind");
}

double partition_distance(const Graph& g1, const Graph& g2, const Rat& p,
                          int k_max, bool exact, long long budget,
                          std::uint64_t seed, SetDistanceKind kind) {
  if (k_max < 2) throw std::invalid_argument("partition_distance: k_max must be >= 2");
  double c_bound = 0.0;
  for (const Graph* g : {&g1, &g2})
    if (g->n > 0)
      c_bound = std::max(c_bound,
                         rat_to_double(Rat(2 * static_cast<long>(g->edges.size())) /
                                       (p * Rat(g->n) * Rat(g->n))));
  double total = 0.0;
  for (int k = 2; k <= k_max; ++k) {
    PartitionSpectrum a =
        exact ? partition_spectrum_exact(g1, k, p, budget)
              : partition_spectrum_search(g1, k, p, budget, derive_seed(seed, 2 * k));
    PartitionSpectrum b =
        exact ? partition_spectrum_exact(g2, k, p, budget)
              : partition_spectrum_search(g2, k, p, budget, derive_seed(seed, 2 * k + 1));
    double d;
    if (a.matrices.empty() && b.matrices.empty())
      d = 0.0;
    else
      d = set_distance(a.matrices, b.matrices, kind,
                       4.0 * k * k * c_bound);
    total += std::pow(2.0, -k) * std::min(d, 1.0);
  }
  return total;
}

DensityMatrix kernel_split_matrix(const FiniteKernel& k,
                                  const std::vector<std::vector<double>>& split) {
  const int types = k.size();
  if (static_cast<int>(split.size()) != types)
    throw std::invalid_argument("kernel_split_matrix: one split row per type required");
  if (split.empty() || split[0].empty())
    throw std::invalid_argument("kernel_split_matrix: empty split");
  const int parts = static_cast<int>(split[0].size());
  for (const auto& row : split) {
    if (static_cast<int>(row.size()) != parts)
      throw std::invalid_argument("kernel_split_matrix: ragged split");
    double sum = 0.0;
    for (double f : row) {
      if (f < -1e-12) throw std::invalid_argument("kernel_split_matrix: negative fraction");
      sum += f;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::invalid_argument("kernel_split_matrix: split row does not sum to one");
  }

  std::vector<double> mu(types), weight(parts, 0.0);
  for (int x = 0; x < types; ++x) mu[x] = rat_to_double(k.mu[x]);
  for (int a = 0; a < parts; ++a)
    for (int x = 0; x < types; ++x) weight[a] += split[x][a] * mu[x];
  for (int a = 0; a < parts; ++a)
    if (weight[a] <= 0)
      throw std::invalid_argument("kernel_split_matrix: part with zero mass");

  DensityMatrix m(parts, std::vector<double>(parts, 0.0));
  for (int x = 0; x < types; ++x)
    for (int y = 0; y < types; ++y) {
      double rate = rat_to_double(k.kappa[x][y]) * mu[x] * mu[y];
      if (rate == 0.0) continue;
      for (int a = 0; a < parts; ++a) {
        if (split[x][a] == 0.0) continue;
        for (int b = 0; b < parts; ++b)
          m[a][b] += split[x][a] * rate * split[y][b];
      }
    }
  for (int a = 0; a < parts; ++a)
    for (int b = 0; b < parts; ++b) m[a][b] /= weight[a] * weight[b];
  return m;
}

}  // namespace sg
