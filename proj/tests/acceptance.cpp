// Acceptance gate: one check per release criterion, each printing a single
// [PASS]/[FAIL] line.  Exit code is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "sparsegraph/branching.hpp"
#include "sparsegraph/canonical.hpp"
#include "sparsegraph/errors.hpp"
#include "sparsegraph/graph.hpp"
#include "sparsegraph/kernel.hpp"
#include "sparsegraph/local.hpp"
#include "sparsegraph/metrics.hpp"
#include "sparsegraph/models.hpp"
#include "sparsegraph/partitions.hpp"
#include "sparsegraph/rng.hpp"
#include "sparsegraph/unimodular.hpp"

namespace {

using sg::Rat;

Rat frac(long a, long b) { return Rat(a) / Rat(b); }

struct Failure {
  std::string detail;
};

#define REQUIRE_OR_FAIL(cond, msg)                        \
  do {                                                    \
    if (!(cond)) throw Failure{msg};                      \
  } while (0)

// ---------------------------------------------------------------------------
// shared helpers

sg::Graph random_graph(int n, double q, std::uint64_t seed) {
  sg::Rng rng = sg::make_rng(seed);
  std::bernoulli_distribution flip(q);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (flip(rng)) edges.emplace_back(u, v);
    }
  }
  return sg::make_graph(n, edges);
}

sg::Graph gnp(int n, const Rat& c, std::uint64_t seed) {
  return sg::sample_inhomogeneous(sg::constant_kernel(c), n, Rat(1) / Rat(n), seed);
}

double rho_fixed_point(double c) {
  double lo = 1e-12;
  double hi = 1.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (1.0 - std::exp(-c * mid) - mid > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Direct sup over vertex-set pairs of the folded step difference; independent
// of the library's Gray-code/analytic-T evaluation.
double brute_rectangle_sup(const std::vector<std::vector<double>>& w) {
  const int n = static_cast<int>(w.size());
  double best = 0.0;
  std::vector<double> colsum(static_cast<std::size_t>(n), 0.0);
  for (unsigned s = 1; s < (1u << n); ++s) {
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        if (s & (1u << i)) acc += w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
      colsum[static_cast<std::size_t>(j)] = acc;
    }
    for (unsigned t = 1; t < (1u << n); ++t) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) {
        if (t & (1u << j)) acc += colsum[static_cast<std::size_t>(j)];
      }
      best = std::max(best, std::abs(acc));
    }
  }
  return best;
}

std::vector<std::vector<int>> adjacency_matrix(const sg::Graph& g) {
  std::vector<std::vector<int>> a(static_cast<std::size_t>(g.n),
                                  std::vector<int>(static_cast<std::size_t>(g.n), 0));
  for (const auto& [u, v] : g.edges) {
    a[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
    a[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
  }
  return a;
}

// All isomorphism classes of simple graphs on n vertices (n small), as
// canonical edge-mask representatives.
std::vector<sg::Graph> graph_classes(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<sg::Graph> out;
  const unsigned masks = 1u << pairs.size();
  for (unsigned mask = 0; mask < masks; ++mask) {
    unsigned canon = mask;
    for (const auto& pm : perms) {
      unsigned image = 0;
      for (std::size_t e = 0; e < pairs.size(); ++e) {
        if (!(mask & (1u << e))) continue;
        const int u = pm[static_cast<std::size_t>(pairs[e].first)];
        const int v = pm[static_cast<std::size_t>(pairs[e].second)];
        const auto it = std::find(pairs.begin(), pairs.end(),
                                  std::make_pair(std::min(u, v), std::max(u, v)));
        image |= 1u << (it - pairs.begin());
      }
      canon = std::min(canon, image);
    }
    if (canon != mask) continue;
    std::vector<std::pair<int, int>> edges;
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      if (mask & (1u << e)) edges.push_back(pairs[e]);
    }
    out.push_back(sg::make_graph(n, edges));
  }
  return out;
}

sg::LocalRule degree_pair_rule(const sg::FiniteSupportLaw& law, int dx, int dy) {
  return sg::rule_from_predicate(
      law, 2, [dx, dy](const sg::Graph& g, const std::vector<int>&, int x, int y) {
        const auto adj = sg::adjacency_lists(g);
        return static_cast<int>(adj[static_cast<std::size_t>(x)].size()) == dx &&
               static_cast<int>(adj[static_cast<std::size_t>(y)].size()) == dy;
      });
}

// Empirical radius-t ball law folded onto the exact law's partition: shapes
// the exact law enumerates keep their mass, everything else joins the
// truncated bucket.
sg::TreeLaw fold_to_partition(const sg::NeighbourhoodLaw& nl, const sg::TreeLaw& exact) {
  sg::TreeLaw out;
  out.t = nl.t;
  double rest = 0.0;
  for (const auto& [code, count] : nl.counts) {
    const double mass = static_cast<double>(count) / static_cast<double>(nl.n);
    if (exact.p.count(code) > 0) {
      out.p[code] = mass;
    } else {
      rest += mass;
    }
  }
  out.truncated = rest;
  return out;
}

// ---------------------------------------------------------------------------
// criteria

// Invariant type frequencies on the (2,3,4)-degree tree: shift fixed point,
// the degree-(2,3) involution report, and a populated violation scan.
void criterion_1() {
  const sg::QtSpec spec = sg::make_qt_spec({{0, 1, 1}, {2, 0, 1}, {1, 3, 0}});
  const sg::FiniteSupportLaw law =
      sg::qt_law(spec, {frac(9, 20), frac(7, 20), frac(4, 20)});

  const auto [tilde, shifted] = sg::size_biased_shift(law);
  REQUIRE_OR_FAIL(sg::laws_equal(tilde, sg::qt_law(spec, {frac(18, 55), frac(21, 55), frac(16, 55)})),
                  "size-biased law wrong");
  REQUIRE_OR_FAIL(sg::laws_equal(shifted, tilde), "shift fixed point lost");

  const sg::InvolutionResult inv = sg::involution_check(law, degree_pair_rule(law, 2, 3));
  REQUIRE_OR_FAIL(std::abs(inv.lhs - 0.45) < 1e-12, "lhs != 0.45");
  REQUIRE_OR_FAIL(std::abs(inv.rhs - 0.70) < 1e-12, "rhs != 0.70");
  REQUIRE_OR_FAIL(!inv.invariant, "rule reported invariant");
  REQUIRE_OR_FAIL(!sg::scan_violations(law, 2).empty(), "scan found nothing");
}

// Grandmother ball: the parent rule integrates to 1 one way and 2 the other.
void criterion_2() {
  const sg::FiniteSupportLaw pm = sg::point_mass(sg::make_atom(sg::grandmother_graph(2)));
  const sg::LocalRule rule = sg::rule_from_predicate(
      pm, 1, [](const sg::Graph&, const std::vector<int>& parent, int x, int y) {
        return parent[static_cast<std::size_t>(x)] == y;
      });
  const sg::InvolutionResult inv = sg::involution_check(pm, rule);
  REQUIRE_OR_FAIL(inv.lhs == 1.0, "parent-rule lhs != 1");
  REQUIRE_OR_FAIL(inv.rhs == 2.0, "parent-rule rhs != 2");
}

// Kernel algebra round trips on randomly split-and-lumped rational kernels.
void criterion_3() {
  sg::Rng rng = sg::make_rng(20260819);
  std::uniform_int_distribution<int> base_types(1, 3);
  std::uniform_int_distribution<int> mass(1, 6);
  std::uniform_int_distribution<int> rate_num(0, 5);
  std::uniform_int_distribution<int> rate_den(1, 3);
  std::uniform_int_distribution<int> split(1, 2);
  std::uniform_int_distribution<int> coin(0, 1);

  for (int rep = 0; rep < 200; ++rep) {
    const int mb = base_types(rng);
    std::vector<Rat> mu_b(static_cast<std::size_t>(mb));
    Rat total = 0;
    for (auto& m : mu_b) {
      m = Rat(mass(rng));
      total += m;
    }
    for (auto& m : mu_b) m /= total;
    std::vector<std::vector<Rat>> kappa_b(static_cast<std::size_t>(mb),
                                           std::vector<Rat>(static_cast<std::size_t>(mb)));
    for (int i = 0; i < mb; ++i) {
      for (int j = i; j < mb; ++j) {
        kappa_b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            Rat(rate_num(rng)) / Rat(rate_den(rng));
        kappa_b[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
            kappa_b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
    }
    const sg::FiniteKernel kb = sg::make_kernel(mu_b, kappa_b);

    // Pullback refinement: split each base type, divide its mass.
    std::vector<int> fine_base;
    std::vector<Rat> mu_f;
    for (int b = 0; b < kb.size(); ++b) {
      int parts = split(rng);
      if (static_cast<int>(fine_base.size()) + parts + (kb.size() - b - 1) > 5) parts = 1;
      std::vector<Rat> shares(static_cast<std::size_t>(parts));
      Rat share_total = 0;
      for (auto& s : shares) {
        s = Rat(mass(rng));
        share_total += s;
      }
      for (int q = 0; q < parts; ++q) {
        fine_base.push_back(b);
        mu_f.push_back(kb.mu[static_cast<std::size_t>(b)] * shares[static_cast<std::size_t>(q)] /
                       share_total);
      }
    }
    const int mf = static_cast<int>(fine_base.size());
    std::vector<std::vector<Rat>> kappa_f(static_cast<std::size_t>(mf),
                                           std::vector<Rat>(static_cast<std::size_t>(mf)));
    for (int i = 0; i < mf; ++i) {
      for (int j = 0; j < mf; ++j) {
        kappa_f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            kb.kappa[static_cast<std::size_t>(fine_base[static_cast<std::size_t>(i)])]
                    [static_cast<std::size_t>(fine_base[static_cast<std::size_t>(j)])];
      }
    }
    const sg::FiniteKernel kf = sg::make_kernel(mu_f, kappa_f);

    // Random lumpings that stay inside the fibres of the base map.
    const auto random_lump = [&]() {
      sg::TypeMap tau;
      tau.to.assign(static_cast<std::size_t>(mf), -1);
      std::map<std::pair<int, int>, int> group_id;  // (base, subgroup) -> new type
      for (int i = 0; i < mf; ++i) {
        const int sub = coin(rng);
        const auto key = std::make_pair(fine_base[static_cast<std::size_t>(i)], sub);
        auto it = group_id.find(key);
        if (it == group_id.end()) it = group_id.emplace(key, tau.codomain++).first;
        tau.to[static_cast<std::size_t>(i)] = it->second;
      }
      return tau;
    };
    const sg::TypeMap tau1 = random_lump();
    const sg::TypeMap tau2 = random_lump();
    const sg::FiniteKernel k1 = sg::quotient_kernel(kf, tau1);
    const sg::FiniteKernel k2 = sg::quotient_kernel(kf, tau2);

    // Induced maps from the lumped kernels down to the base.
    sg::TypeMap sigma1{std::vector<int>(static_cast<std::size_t>(tau1.codomain), -1), kb.size()};
    sg::TypeMap sigma2{std::vector<int>(static_cast<std::size_t>(tau2.codomain), -1), kb.size()};
    for (int i = 0; i < mf; ++i) {
      sigma1.to[static_cast<std::size_t>(tau1.to[static_cast<std::size_t>(i)])] =
          fine_base[static_cast<std::size_t>(i)];
      sigma2.to[static_cast<std::size_t>(tau2.to[static_cast<std::size_t>(i)])] =
          fine_base[static_cast<std::size_t>(i)];
    }

    const sg::Refinement ref = sg::common_refinement(k1, k2, kb, sigma1, sigma2);
    REQUIRE_OR_FAIL(sg::verify_refinement(ref.kernel, k1, ref.to_first).ok,
                    "common refinement fails against first input");
    REQUIRE_OR_FAIL(sg::verify_refinement(ref.kernel, k2, ref.to_second).ok,
                    "common refinement fails against second input");

    const sg::Coarsening co = sg::common_coarsening(ref.kernel, ref.to_first, ref.to_second);
    REQUIRE_OR_FAIL(sg::verify_refinement(k1, co.kernel, co.from_first).ok,
                    "first input does not refine the common coarsening");
    REQUIRE_OR_FAIL(sg::verify_refinement(k2, co.kernel, co.from_second).ok,
                    "second input does not refine the common coarsening");

    const sg::CanonicalCoarsening c1 = sg::canonical_coarsening(kf);
    REQUIRE_OR_FAIL(sg::verify_refinement(kf, c1.kernel, c1.projection).ok,
                    "canonical coarsening is not a coarsening");
    const sg::CanonicalCoarsening c2 = sg::canonical_coarsening(c1.kernel);
    REQUIRE_OR_FAIL(c2.kernel.size() == c1.kernel.size(),
                    "canonical coarsening not idempotent (size)");
    REQUIRE_OR_FAIL(sg::kernel_isomorphism(c1.kernel, c2.kernel).has_value(),
                    "canonical coarsening not idempotent (kernel)");
  }
}

// Typeless-equivalence decisions plus exact tree-law agreement for true pairs.
void criterion_4() {
  const sg::FiniteKernel cb31 = sg::chessboard_kernel(Rat(3), Rat(1));
  const sg::FiniteKernel cb40 = sg::chessboard_kernel(Rat(4), Rat(0));
  const sg::FiniteKernel cb04 = sg::chessboard_kernel(Rat(0), Rat(4));
  const sg::FiniteKernel c2 = sg::constant_kernel(Rat(2));
  const sg::FiniteKernel c3 = sg::constant_kernel(Rat(3));

  REQUIRE_OR_FAIL(sg::pi_equal(cb31, c2), "chessboard(3,1) vs constant 2");
  REQUIRE_OR_FAIL(sg::pi_equal(cb40, cb04), "chessboard(4,0) vs chessboard(0,4)");
  REQUIRE_OR_FAIL(!sg::pi_equal(c2, c3), "constant 2 vs constant 3");

  const std::vector<std::pair<const sg::FiniteKernel*, const sg::FiniteKernel*>> true_pairs = {
      {&cb31, &c2}, {&cb40, &cb04}};
  for (const auto& [ka, kc] : true_pairs) {
    for (int t = 1; t <= 3; ++t) {
      const sg::TreeLaw la = sg::exact_tree_law(*ka, ka->mu, t, 12);
      const sg::TreeLaw lb = sg::exact_tree_law(*kc, kc->mu, t, 12);
      std::set<std::string> codes;
      for (const auto& [code, p] : la.p) codes.insert(code);
      for (const auto& [code, p] : lb.p) codes.insert(code);
      for (const std::string& code : codes) {
        const double pa = la.p.count(code) ? la.p.at(code) : 0.0;
        const double pb = lb.p.count(code) ? lb.p.at(code) : 0.0;
        REQUIRE_OR_FAIL(std::abs(pa - pb) <= 1e-9, "tree-law mass mismatch at " + code);
      }
      REQUIRE_OR_FAIL(std::abs(la.truncated - lb.truncated) <= 1e-9,
                      "tree-law truncation mismatch");
    }
  }
}

// Sampled radius-t ball laws against the exact offspring law on the shared
// partition {enumerated shapes} + {rest}.
void criterion_5() {
  const int n = 50000;
  const sg::FiniteKernel c2 = sg::constant_kernel(Rat(2));
  for (int t = 1; t <= 2; ++t) {
    const sg::TreeLaw exact = sg::exact_tree_law(c2, c2.mu, t, 12);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const sg::Graph g = gnp(n, Rat(2), seed);
      const sg::NeighbourhoodLaw nl = sg::neighbourhood_law(g, t);
      const double tv = sg::tree_law_tv(fold_to_partition(nl, exact), exact);
      REQUIRE_OR_FAIL(tv <= 0.02,
                      "tv " + std::to_string(tv) + " at t=" + std::to_string(t) +
                          " seed=" + std::to_string(seed));
    }
  }
}

// Largest-component fraction against the survival fixed point.
void criterion_6() {
  const int n = 50000;
  const double rho = rho_fixed_point(2.0);
  REQUIRE_OR_FAIL(std::abs(1.0 - std::exp(-2.0 * rho) - rho) < 1e-9, "fixed point unsolved");
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const sg::Graph g = gnp(n, Rat(2), seed);
    const double frac = static_cast<double>(sg::largest_component_size(g)) / n;
    REQUIRE_OR_FAIL(std::abs(frac - rho) < 0.01,
                    "fraction " + std::to_string(frac) + " at seed " + std::to_string(seed));
  }
}

// Normalized tree-embedding counts near their sparse limits.
void criterion_7() {
  const int n = 50000;
  const auto path_graph = [](int k) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v + 1 < k; ++v) edges.emplace_back(v, v + 1);
    return sg::make_graph(k, edges);
  };
  const auto star = [](int leaves) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
    return sg::make_graph(leaves + 1, edges);
  };
  const sg::Graph spider = sg::make_graph(5, {{0, 1}, {1, 2}, {0, 3}, {0, 4}});
  const std::vector<std::pair<sg::Graph, int>> probes = {
      {path_graph(2), 1}, {path_graph(3), 2}, {path_graph(4), 3}, {star(3), 3},
      {path_graph(5), 4}, {star(4), 4},       {spider, 4}};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const sg::Graph g = gnp(n, Rat(2), seed);
    const Rat p = frac(1, n);
    for (const auto& [pattern, e] : probes) {
      const double target = std::pow(2.0, e);
      const double s = sg::subgraph_counts(pattern, g, p).s_tilde;
      REQUIRE_OR_FAIL(std::abs(s / target - 1.0) <= 0.10,
                      "density off by " + std::to_string(s / target - 1.0) + " on " +
                          std::to_string(e) + "-edge tree, seed " + std::to_string(seed));
    }
  }
}

// Exact metric modes against independent brute force.
void criterion_8() {
  // Cut norm of random signed block matrices.
  sg::Rng rng = sg::make_rng(88);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  std::uniform_real_distribution<double> mss(0.2, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 8;
    sg::BlockMatrix m;
    m.mass.resize(static_cast<std::size_t>(n));
    double total = 0.0;
    for (auto& x : m.mass) {
      x = mss(rng);
      total += x;
    }
    for (auto& x : m.mass) x /= total;
    m.value.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        m.value[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = val(rng);
        m.value[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
            m.value[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
    }
    std::vector<std::vector<double>> w(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            m.value[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
            m.mass[static_cast<std::size_t>(i)] * m.mass[static_cast<std::size_t>(j)];
      }
    }
    const double exact = sg::cut_norm_exact(m);
    const double brute = brute_rectangle_sup(w);
    REQUIRE_OR_FAIL(std::abs(exact - brute) <= 1e-9, "cut norm mismatch vs brute force");
    REQUIRE_OR_FAIL(sg::cut_norm_heuristic(m, 40, 7) <= exact + 1e-9,
                    "heuristic exceeded the exact norm");
  }

  // Pinned graph-pair values.
  const sg::Graph k3 = sg::make_graph(3, {{0, 1}, {0, 2}, {1, 2}});
  const sg::Graph p3 = sg::make_graph(3, {{0, 1}, {1, 2}});
  REQUIRE_OR_FAIL(std::abs(sg::edit_distance_exact(k3, p3, frac(1, 3)) - 1.0 / 3.0) < 1e-12,
                  "pinned edit distance");
  REQUIRE_OR_FAIL(std::abs(sg::cut_distance_exact(p3, k3, frac(1, 3)) - 2.0 / 3.0) < 1e-12,
                  "pinned cut distance");

  // All isomorphism classes, all same-order pairs, against permutation brutes.
  const std::vector<int> expected_counts = {2, 4, 11, 34};
  for (int n = 2; n <= 5; ++n) {
    const std::vector<sg::Graph> classes = graph_classes(n);
    REQUIRE_OR_FAIL(static_cast<int>(classes.size()) == expected_counts[static_cast<std::size_t>(n - 2)],
                    "isomorphism class count off at n=" + std::to_string(n));
    const Rat p = frac(1, n);
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (std::size_t a = 0; a < classes.size(); ++a) {
      const auto ma = adjacency_matrix(classes[a]);
      for (std::size_t b = a; b < classes.size(); ++b) {
        const auto mb = adjacency_matrix(classes[b]);
        std::iota(perm.begin(), perm.end(), 0);
        double brute_edit = 1e300;
        double brute_cut = 1e300;
        do {
          long diff = 0;
          std::vector<std::vector<double>> w(
              static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
          for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
              const int d = ma[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                            mb[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]
                              [static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])];
              if (i < j && d != 0) ++diff;
              w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                  static_cast<double>(d) / n;
            }
          }
          brute_edit = std::min(brute_edit, static_cast<double>(diff) / n);
          brute_cut = std::min(brute_cut, brute_rectangle_sup(w));
        } while (std::next_permutation(perm.begin(), perm.end()));

        const double lib_edit = sg::edit_distance_exact(classes[a], classes[b], p);
        const double lib_cut = sg::cut_distance_exact(classes[a], classes[b], p);
        REQUIRE_OR_FAIL(std::abs(lib_edit - brute_edit) <= 1e-9, "edit distance vs brute");
        REQUIRE_OR_FAIL(std::abs(lib_cut - brute_cut) <= 1e-9, "cut distance vs brute");
        REQUIRE_OR_FAIL(lib_cut <= 2.0 * lib_edit + 1e-9, "cut > 2 edit");
      }
    }
  }
}

// Balanced-partition spectra: pinned 4-cycle value, planted recovery, and the
// all-parts-still-dense signature of the one-type model.
void criterion_9() {
  const sg::Graph c4 = sg::make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const sg::PartitionSpectrum sp4 = sg::partition_spectrum_exact(c4, 2, frac(1, 4), 1000);
  const sg::DensityMatrix split{{0.0, 4.0}, {4.0, 0.0}};
  const sg::DensityMatrix even{{2.0, 2.0}, {2.0, 2.0}};
  REQUIRE_OR_FAIL(sp4.matrices.size() == 2, "4-cycle spectrum size");
  REQUIRE_OR_FAIL((sp4.matrices[0] == split && sp4.matrices[1] == even) ||
                      (sp4.matrices[0] == even && sp4.matrices[1] == split),
                  "4-cycle spectrum values");

  const int n = 2000;
  const Rat p = frac(1, n);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const sg::Graph planted = sg::sample_planted_bisection(n, 0.0, 4.0 / n, seed);
    const sg::PartitionSpectrum sp =
        sg::partition_spectrum_search(planted, 2, p, 10000, sg::derive_seed(seed, 1));
    bool recovered = false;
    for (const auto& m : sp.matrices) {
      if (std::max(m[0][0], m[1][1]) <= 0.1 && std::min(m[0][1], m[1][0]) >= 3.6) {
        recovered = true;
      }
    }
    REQUIRE_OR_FAIL(recovered, "planted bisection not recovered at seed " + std::to_string(seed));

    const sg::Graph er = gnp(n, Rat(2), sg::derive_seed(seed, 2));
    const sg::PartitionSpectrum spe =
        sg::partition_spectrum_search(er, 2, p, 10000, sg::derive_seed(seed, 3));
    REQUIRE_OR_FAIL(!spe.matrices.empty(), "empty search spectrum");
    double min_diag_sum = 1e300;
    for (const auto& m : spe.matrices) min_diag_sum = std::min(min_diag_sum, m[0][0] + m[1][1]);
    REQUIRE_OR_FAIL(min_diag_sum >= 0.3,
                    "one-type model lost its internal density: " + std::to_string(min_diag_sum));
  }
}

// Concentration of the probe-to-spectrum distance across samples.
void criterion_10() {
  const int n = 2000;
  const Rat p = frac(1, n);
  const sg::DensityMatrix probe{{2.0, 2.0}, {2.0, 2.0}};
  std::vector<double> dists;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const sg::Graph g = gnp(n, Rat(2), seed);
    const sg::PartitionSpectrum sp =
        sg::partition_spectrum_search(g, 2, p, 10000, sg::derive_seed(seed, 4));
    REQUIRE_OR_FAIL(!sp.matrices.empty(), "empty search spectrum");
    double best = 1e300;
    for (const auto& m : sp.matrices) {
      double linf = 0.0;
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) linf = std::max(linf, std::abs(m[i][j] - probe[i][j]));
      }
      best = std::min(best, linf);
    }
    dists.push_back(best);
  }
  double mean = 0.0;
  for (double d : dists) mean += d;
  mean /= dists.size();
  double var = 0.0;
  for (double d : dists) var += (d - mean) * (d - mean);
  var /= (dists.size() - 1);
  REQUIRE_OR_FAIL(std::sqrt(var) <= 0.05, "probe distance sd " + std::to_string(std::sqrt(var)));
}

// Root reconstruction against the signal-strength threshold.
void criterion_11() {
  const double c = 2.0;
  const int t = 8;
  const long m = 2000;

  const sg::ReconstructionResult weak = sg::reconstruct_root(c, 0.8, t, m, 118);
  REQUIRE_OR_FAIL(std::abs(weak.accuracy - 0.5) <= 0.02,
                  "weak-signal accuracy " + std::to_string(weak.accuracy));

  const sg::ReconstructionResult strong = sg::reconstruct_root(c, 1.8, t, m, 119);
  REQUIRE_OR_FAIL(strong.accuracy >= 0.55,
                  "strong-signal accuracy " + std::to_string(strong.accuracy));

  const std::vector<double> deltas = {0.0, 0.5, 1.0, 1.5, 1.9};
  double prev = -1.0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const sg::ReconstructionResult r =
        sg::reconstruct_root(c, deltas[i], t, m, 120 + static_cast<std::uint64_t>(i));
    REQUIRE_OR_FAIL(r.accuracy >= prev - 0.01,
                    "accuracy not monotone at delta " + std::to_string(deltas[i]));
    prev = r.accuracy;
  }
}

// Triangle configuration model: local degree/triangle structure and the
// exact involution identity of its empirical ball laws.
void criterion_12() {
  const int n = 3000;
  const sg::Graph g = sg::sample_triangle_config(n, 2, 2026);
  const auto adj = sg::adjacency_lists(g);
  std::set<std::pair<int, int>> edge_set(g.edges.begin(), g.edges.end());
  const auto adjacent = [&](int u, int v) {
    return edge_set.count({std::min(u, v), std::max(u, v)}) > 0;
  };
  int good = 0;
  for (int v = 0; v < n; ++v) {
    const auto& nb = adj[static_cast<std::size_t>(v)];
    if (nb.size() != 4) continue;
    const bool two_triangles = (adjacent(nb[0], nb[1]) && adjacent(nb[2], nb[3])) ||
                               (adjacent(nb[0], nb[2]) && adjacent(nb[1], nb[3])) ||
                               (adjacent(nb[0], nb[3]) && adjacent(nb[1], nb[2]));
    if (two_triangles) ++good;
  }
  REQUIRE_OR_FAIL(good >= static_cast<int>(0.95 * n),
                  "only " + std::to_string(good) + " clean degree-4 vertices");

  // The identity holds exactly, which is well within any 3-sigma band.
  REQUIRE_OR_FAIL(sg::scan_violations(sg::empirical_ball_law(g, 2), 1, 0.0).empty(),
                  "uncoloured involution identity violated");
  std::vector<int> colouring(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) colouring[static_cast<std::size_t>(v)] = v % 7;
  REQUIRE_OR_FAIL(sg::scan_violations(sg::empirical_ball_law(g, 2, &colouring), 1, 0.0).empty(),
                  "coloured involution identity violated");
}

// Ball statistics cannot see disjoint duplication.
void criterion_13() {
  sg::Rng rng = sg::make_rng(13);
  std::uniform_int_distribution<int> size(10, 50);
  std::uniform_real_distribution<double> density(0.03, 0.2);
  for (int rep = 0; rep < 20; ++rep) {
    const sg::Graph g = random_graph(size(rng), density(rng), 1300 + static_cast<std::uint64_t>(rep));
    const sg::Graph doubled = sg::disjoint_union(g, g);
    for (int t = 1; t <= 3; ++t) {
      REQUIRE_OR_FAIL(sg::law_equal(sg::neighbourhood_law(g, t), sg::neighbourhood_law(doubled, t)),
                      "duplication changed the radius-" + std::to_string(t) + " law");
    }
  }
}

struct Criterion {
  int id;
  const char* label;
  double budget_seconds;
  std::function<void()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "invariant frequencies on the (2,3,4) tree", 1.0, criterion_1},
      {2, "grandmother parent rule integrates to (1,2)", 1.0, criterion_2},
      {3, "kernel refinement/coarsening round trips", 30.0, criterion_3},
      {4, "typeless equivalence and tree-law agreement", 60.0, criterion_4},
      {5, "sampled ball laws match the offspring law", 120.0, criterion_5},
      {6, "giant component fraction at its fixed point", 120.0, criterion_6},
      {7, "tree embedding densities near their limits", 600.0, criterion_7},
      {8, "exact metrics agree with brute force", 600.0, criterion_8},
      {9, "partition spectra: pinned, planted, one-type", 600.0, criterion_9},
      {10, "probe-to-spectrum distance concentrates", 600.0, criterion_10},
      {11, "root reconstruction across the threshold", 180.0, criterion_11},
      {12, "triangle model local structure and involution", 600.0, criterion_12},
      {13, "ball laws are blind to disjoint duplication", 600.0, criterion_13},
  };

  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      c.run();
    } catch (const Failure& f) {
      ok = false;
      detail = f.detail;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && elapsed > c.budget_seconds) {
      ok = false;
      detail = "runtime " + std::to_string(elapsed) + "s over budget";
    }
    std::printf("[%s] criterion %2d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.label,
                elapsed, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures;
}
