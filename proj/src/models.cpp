#include "sparsegraph/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "sparsegraph/errors.hpp"
#include "sparsegraph/rng.hpp"

namespace sg {

namespace {

// Visit every position of [0, space) independently kept with probability q,
// in increasing order, via geometric skips.
template <class Emit>
void bernoulli_scan(std::uint64_t space, double q, Rng& rng, Emit&& emit) {
  if (space == 0 || q <= 0.0) return;
  if (q >= 1.0) {
    for (std::uint64_t i = 0; i < space; ++i) emit(i);
    return;
  }
  const double log_skip = std::log1p(-q);
  double pos = -1.0;
  while (true) {
    double u = 1.0 - uniform01(rng);  // in (0, 1]
    pos += 1.0 + std::floor(std::log(u) / log_skip);
    if (pos >= static_cast<double>(space)) return;
    emit(static_cast<std::uint64_t>(pos));
  }
}

// Rank of the pair (i, j), i < j < m, in lexicographic order.
std::pair<int, int> unrank_pair(std::uint64_t idx, std::uint64_t m) {
  // first pair of row i has rank i*m - i*(i+1)/2
  double guess =
      std::floor(m - 0.5 - std::sqrt((m - 0.5) * (m - 0.5) - 2.0 * static_cast<double>(idx)));
  std::uint64_t i = guess > 0.0 ? static_cast<std::uint64_t>(guess) : 0;
  if (i > m - 2) i = m - 2;
  auto row_start = [m](std::uint64_t r) { return r * m - r * (r + 1) / 2; };
  while (i > 0 && row_start(i) > idx) --i;
  while (row_start(i + 1) <= idx) ++i;
  std::uint64_t j = i + 1 + (idx - row_start(i));
  return {static_cast<int>(i), static_cast<int>(j)};
}

int draw_type(const std::vector<double>& cumulative, Rng& rng) {
  double u = uniform01(rng);
  for (size_t i = 0; i < cumulative.size(); ++i)
    if (u < cumulative[i]) return static_cast<int>(i);
  return static_cast<int>(cumulative.size()) - 1;
}

}  // namespace

Graph sample_inhomogeneous(const FiniteKernel& k, int n, const Rat& p,
                           std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_inhomogeneous: n must be >= 1");
  if (p < 0) throw std::invalid_argument("sample_inhomogeneous: negative density");
  const int types = k.size();

  std::vector<double> cum(types);
  double acc = 0.0;
  for (int x = 0; x < types; ++x) {
    acc += rat_to_double(k.mu[x]);
    cum[x] = acc;
  }

  Rng rng = make_rng(seed);
  std::vector<int> type(n);
  for (int v = 0; v < n; ++v) type[v] = draw_type(cum, rng);

  std::vector<std::vector<int>> members(types);
  for (int v = 0; v < n; ++v) members[type[v]].push_back(v);

  std::vector<std::pair<int, int>> edges;
  for (int s = 0; s < types; ++s)
    for (int t = s; t < types; ++t) {
      double q = std::min(rat_to_double(p * k.kappa[s][t]), 1.0);
      const auto& vs = members[s];
      const auto& vt = members[t];
      if (s == t) {
        std::uint64_t m = vs.size();
        bernoulli_scan(m * (m - 1) / 2, q, rng, [&](std::uint64_t idx) {
          auto [i, j] = unrank_pair(idx, m);
          edges.push_back({vs[i], vs[j]});
        });
      } else {
        std::uint64_t m = vt.size();
        bernoulli_scan(vs.size() * m, q, rng, [&](std::uint64_t idx) {
          int u = vs[idx / m];
          int v = vt[idx % m];
          edges.push_back({std::min(u, v), std::max(u, v)});
        });
      }
    }
  return make_graph(n, std::move(edges), std::move(type));
}

Graph sample_planted_bisection(int n, double p_in, double p_out,
                               std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_planted_bisection: n must be >= 1");
  if (p_in < 0 || p_in > 1 || p_out < 0 || p_out > 1)
    throw std::invalid_argument("sample_planted_bisection: probabilities must lie in [0,1]");

  Rng rng = make_rng(seed);
  std::vector<int> part(n, 1);
  std::fill(part.begin(), part.begin() + (n + 1) / 2, 0);
  std::shuffle(part.begin(), part.end(), rng);

  std::vector<std::vector<int>> members(2);
  for (int v = 0; v < n; ++v) members[part[v]].push_back(v);

  std::vector<std::pair<int, int>> edges;
  for (int s = 0; s < 2; ++s) {
    const auto& vs = members[s];
    std::uint64_t m = vs.size();
    bernoulli_scan(m * (m - 1) / 2, p_in, rng, [&](std::uint64_t idx) {
      auto [i, j] = unrank_pair(idx, m);
      edges.push_back({vs[i], vs[j]});
    });
  }
  std::uint64_t m1 = members[1].size();
  bernoulli_scan(members[0].size() * m1, p_out, rng, [&](std::uint64_t idx) {
    int u = members[0][idx / m1];
    int v = members[1][idx % m1];
    edges.push_back({std::min(u, v), std::max(u, v)});
  });
  return make_graph(n, std::move(edges), std::move(part));
}

long graph_aut_order(const Graph& g) {
  if (g.n > 10) throw size_refusal("graph_aut_order: more than 10 vertices");
  std::vector<std::vector<char>> adj(g.n, std::vector<char>(g.n, 0));
  for (auto [u, v] : g.edges) adj[u][v] = adj[v][u] = 1;
  std::vector<int> perm(g.n);
  std::iota(perm.begin(), perm.end(), 0);
  long count = 0;
  do {
    bool ok = true;
    for (auto [u, v] : g.edges)
      if (!adj[perm[u]][perm[v]]) {
        ok = false;
        break;
      }
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

namespace {

// Binomial(trials, q) for huge trial counts, as a sum over chunks small
// enough for the standard sampler to stay in exact-double territory.
long long chunked_binomial(unsigned __int128 trials, double q, Rng& rng) {
  if (q <= 0.0 || trials == 0) return 0;
  const unsigned __int128 chunk_max = 1ull << 50;
  long long total = 0;
  while (trials > 0) {
    long long chunk = static_cast<long long>(std::min(trials, chunk_max));
    std::binomial_distribution<long long> dist(chunk, q);
    total += dist(rng);
    trials -= static_cast<unsigned __int128>(chunk);
  }
  return total;
}

}  // namespace

Graph sample_clique_model(int n, const std::vector<WeightedMotif>& family,
                          std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_clique_model: n must be >= 1");
  for (const auto& wm : family) {
    if (wm.motif.n < 2)
      throw std::invalid_argument("sample_clique_model: motif needs at least 2 vertices");
    std::vector<int> comp = components(wm.motif);
    if (*std::max_element(comp.begin(), comp.end()) != 0)
      throw std::invalid_argument("sample_clique_model: motif must be connected");
    if (wm.weight < 0)
      throw std::invalid_argument("sample_clique_model: negative weight");
  }

  Rng rng = make_rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (const auto& wm : family) {
    const int f = wm.motif.n;
    long aut = graph_aut_order(wm.motif);
    if (f > n || wm.weight == 0.0) continue;

    // trials = n*(n-1)*...*(n-f+1) / aut, refused beyond 2^62
    const unsigned __int128 limit = (static_cast<unsigned __int128>(1) << 62) *
                                    static_cast<unsigned __int128>(aut);
    unsigned __int128 falling = 1;
    for (int i = 0; i < f; ++i) {
      falling *= static_cast<unsigned __int128>(n - i);
      if (falling > limit)
        throw size_refusal("sample_clique_model: placement space exceeds 2^62");
    }
    unsigned __int128 trials = falling / static_cast<unsigned __int128>(aut);
    double q = wm.weight * std::pow(static_cast<double>(n), -(f - 1));
    if (static_cast<double>(trials) * q > 1e7)
      throw size_refusal("sample_clique_model: expected placements exceed 1e7");

    long long placements = chunked_binomial(trials, q, rng);
    std::vector<int> tuple(f);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (long long c = 0; c < placements; ++c) {
      for (int i = 0; i < f; ++i) {
        int v;
        bool fresh;
        do {
          v = pick(rng);
          fresh = true;
          for (int j = 0; j < i; ++j)
            if (tuple[j] == v) fresh = false;
        } while (!fresh);
        tuple[i] = v;
      }
      for (auto [a, b] : wm.motif.edges)
        edges.push_back({std::min(tuple[a], tuple[b]), std::max(tuple[a], tuple[b])});
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return make_graph(n, std::move(edges));
}

Multigraph sample_triangle_config_multi(int n, int d, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_triangle_config: n must be >= 1");
  if (d < 0) throw std::invalid_argument("sample_triangle_config: negative degree");
  if ((static_cast<long long>(n) * d) % 3 != 0)
    throw std::invalid_argument("sample_triangle_config: n*d must be divisible by 3");

  std::vector<int> stubs(static_cast<size_t>(n) * d);
  for (size_t s = 0; s < stubs.size(); ++s) stubs[s] = static_cast<int>(s / d);
  Rng rng = make_rng(seed);
  std::shuffle(stubs.begin(), stubs.end(), rng);

  Multigraph m;
  m.n = n;
  for (size_t s = 0; s + 2 < stubs.size(); s += 3) {
    int a = stubs[s], b = stubs[s + 1], c = stubs[s + 2];
    m.edges.push_back({a, b});
    m.edges.push_back({b, c});
    m.edges.push_back({a, c});
  }
  return m;
}

Graph sample_triangle_config(int n, int d, std::uint64_t seed) {
  return simplified(sample_triangle_config_multi(n, d, seed));
}

FiniteKernel graph_to_kernel(const Graph& g, const Rat& p) {
  if (g.n < 1) throw std::invalid_argument("graph_to_kernel: empty vertex set");
  if (g.n > 512) throw size_refusal("graph_to_kernel: more than 512 vertices");
  if (p <= 0) throw std::invalid_argument("graph_to_kernel: density must be positive");

  std::vector<Rat> mu(g.n, Rat(1) / Rat(g.n));
  std::vector<std::vector<Rat>> kappa(g.n, std::vector<Rat>(g.n, Rat(0)));
  Rat value = Rat(1) / p;
  for (auto [u, v] : g.edges) kappa[u][v] = kappa[v][u] = value;
  return make_kernel(std::move(mu), std::move(kappa));
}

}  // namespace sg
