#include "sparsegraph/branching.hpp"

#include <doctest.h>

#include <cmath>

#include "sparsegraph/errors.hpp"
#include "sparsegraph/rng.hpp"

using namespace sg;

namespace {

FiniteKernel three_type_kernel() {
  return make_kernel({rat_parse("1/2"), rat_parse("1/4"), rat_parse("1/4")},
                     {{Rat(2), Rat(2), Rat(2)},
                      {Rat(2), Rat(0), Rat(2)},
                      {Rat(2), Rat(2), Rat(0)}});
}

FiniteKernel two_type_quotient() {
  return make_kernel({rat_parse("1/2"), rat_parse("1/2")},
                     {{Rat(2), Rat(2)}, {Rat(2), Rat(1)}});
}

}  // namespace

TEST_CASE("lambda hierarchy on the two-type quotient") {
  FiniteKernel k = two_type_quotient();

  NestedMeasure l1a = lambda_hierarchy(k, 0, 1);
  NestedMeasure l1b = lambda_hierarchy(k, 1, 1);
  CHECK(l1a.level == 1);
  CHECK(l1a.scalar == Rat(2));
  CHECK(l1b.scalar == rat_parse("3/2"));

  NestedMeasure l2a = lambda_hierarchy(k, 0, 2);
  REQUIRE(l2a.atoms.size() == 2);
  CHECK(l2a.atoms[0].first.scalar == Rat(2));
  CHECK(l2a.atoms[0].second == Rat(1));
  CHECK(l2a.atoms[1].first.scalar == rat_parse("3/2"));
  CHECK(l2a.atoms[1].second == Rat(1));
  CHECK(l2a.total_mass() == l1a.scalar);

  NestedMeasure l2b = lambda_hierarchy(k, 1, 2);
  REQUIRE(l2b.atoms.size() == 2);
  CHECK(l2b.atoms[0].first.scalar == Rat(2));
  CHECK(l2b.atoms[0].second == Rat(1));
  CHECK(l2b.atoms[1].first.scalar == rat_parse("3/2"));
  CHECK(l2b.atoms[1].second == rat_parse("1/2"));
  CHECK(l2b.total_mass() == l1b.scalar);

  CHECK(!l2a.equal(l2b, true));
  CHECK(l2a.equal(l2a, true));
  CHECK(lambda_hierarchy(k, 0, 3).equal(lambda_hierarchy(k, 0, 3), true));
  CHECK(!lambda_hierarchy(k, 0, 3).equal(lambda_hierarchy(k, 1, 3), true));

  CHECK_THROWS_AS(lambda_hierarchy(k, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(lambda_hierarchy(k, 0, 0), std::invalid_argument);
}

TEST_CASE("lambda hierarchy is preserved by the quotient map") {
  FiniteKernel fine = three_type_kernel();
  FiniteKernel coarse = two_type_quotient();
  // projection 0,1,2 -> 0,1,1
  const int tau[3] = {0, 1, 1};
  for (int level = 1; level <= 4; ++level)
    for (int x = 0; x < 3; ++x) {
      NestedMeasure m = lambda_hierarchy(fine, x, level);
      CHECK(m.equal(lambda_hierarchy(coarse, tau[x], level), true));
      CHECK(m.total_mass() == expected_degree(fine, x));
    }
}

TEST_CASE("lambda hierarchy of equivalent homogeneous kernels collapses") {
  FiniteKernel flat = constant_kernel(Rat(2));
  FiniteKernel cb = chessboard_kernel(Rat(3), Rat(1));
  for (int x = 0; x < 2; ++x) {
    NestedMeasure m = lambda_hierarchy(cb, x, 2);
    REQUIRE(m.atoms.size() == 1);
    CHECK(m.atoms[0].first.scalar == Rat(2));
    CHECK(m.atoms[0].second == Rat(2));
    CHECK(m.equal(lambda_hierarchy(flat, 0, 2), true));
  }
}

TEST_CASE("mixed poisson pmf") {
  double p0 = mixed_poisson_pmf({{2.0, 0.5}, {4.0, 0.5}}, 0);
  CHECK(p0 == doctest::Approx(0.5 * (std::exp(-2.0) + std::exp(-4.0))).epsilon(1e-12));
  CHECK(std::abs(p0 - 0.07683) < 1e-4);

  double p1 = mixed_poisson_pmf({{2.0, 0.5}, {4.0, 0.5}}, 1);
  CHECK(p1 == doctest::Approx(std::exp(-2.0) + 2.0 * std::exp(-4.0)).epsilon(1e-12));

  CHECK(mixed_poisson_pmf({{3.0, 1.0}}, 5) ==
        doctest::Approx(std::exp(-3.0) * 243.0 / 120.0).epsilon(1e-12));
  CHECK(mixed_poisson_pmf({{0.0, 1.0}}, 0) == 1.0);
  CHECK(mixed_poisson_pmf({{0.0, 1.0}}, 2) == 0.0);
  CHECK_THROWS_AS(mixed_poisson_pmf({{2.0, 1.0}}, -1), std::invalid_argument);
  CHECK_THROWS_AS(mixed_poisson_pmf({{-2.0, 1.0}}, 0), std::invalid_argument);
}

TEST_CASE("exact tree law for the constant kernel") {
  FiniteKernel k = constant_kernel(Rat(2));
  std::vector<Rat> root{Rat(1)};

  SUBCASE("depth zero is the point mass on the single vertex") {
    TreeLaw law = exact_tree_law(k, root, 0, 12);
    REQUIRE(law.p.size() == 1);
    CHECK(law.p.at("()") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(law.truncated == doctest::Approx(0.0));
  }

  SUBCASE("depth one matches the poisson offspring law") {
    TreeLaw law = exact_tree_law(k, root, 1, 12);
    CHECK(law.p.at("()") == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK(law.p.at("(())") == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-12));
    CHECK(law.p.at("(()())") == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-12));
    CHECK(law.p.at("(()()())") ==
          doctest::Approx(4.0 / 3.0 * std::exp(-2.0)).epsilon(1e-12));
    // cap 12 vertices = root plus at most 11 children
    double tail = 1.0;
    double term = std::exp(-2.0);
    for (int j = 0; j <= 11; ++j) {
      tail -= term;
      term *= 2.0 / (j + 1);
    }
    CHECK(law.truncated == doctest::Approx(tail).epsilon(1e-6));
  }

  SUBCASE("depth two values") {
    TreeLaw law = exact_tree_law(k, root, 2, 12);
    CHECK(law.p.at("()") == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK(law.p.at("(())") == doctest::Approx(2.0 * std::exp(-4.0)).epsilon(1e-12));
    CHECK(law.p.at("((()))") == doctest::Approx(4.0 * std::exp(-4.0)).epsilon(1e-12));
    CHECK(law.p.at("(()())") == doctest::Approx(2.0 * std::exp(-6.0)).epsilon(1e-12));
    double total = law.truncated;
    for (const auto& [code, p] : law.p) {
      CHECK(p >= 0.0);
      total += p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("the size cap only moves mass into the truncation bucket") {
    TreeLaw law = exact_tree_law(k, root, 1, 3);
    REQUIRE(law.p.size() == 3);
    CHECK(law.truncated == doctest::Approx(1.0 - 5.0 * std::exp(-2.0)).epsilon(1e-12));
    TreeLaw wide = exact_tree_law(k, root, 1, 12);
    for (const auto& [code, p] : law.p)
      CHECK(p == doctest::Approx(wide.p.at(code)).epsilon(1e-12));
  }

  SUBCASE("truncated mass is nonincreasing in the cap") {
    double prev = 1.0;
    for (int cap : {3, 6, 12, 20}) {
      TreeLaw law = exact_tree_law(k, root, 2, cap);
      CHECK(law.truncated <= prev + 1e-12);
      prev = law.truncated;
    }
  }
}

TEST_CASE("equivalent kernels share the exact tree law") {
  FiniteKernel flat = constant_kernel(Rat(2));
  FiniteKernel cb = chessboard_kernel(Rat(3), Rat(1));
  std::vector<Rat> half{rat_parse("1/2"), rat_parse("1/2")};
  for (int t : {2, 3}) {
    TreeLaw a = exact_tree_law(flat, {Rat(1)}, t, 12);
    TreeLaw b = exact_tree_law(cb, half, t, 12);
    CHECK(tree_law_tv(a, b) < 1e-9);
    for (const auto& [code, p] : a.p)
      CHECK(p == doctest::Approx(b.p.at(code)).epsilon(1e-9));
  }
}

TEST_CASE("branching process sampling") {
  FiniteKernel k = constant_kernel(Rat(2));
  std::vector<Rat> root{Rat(1)};

  SUBCASE("deterministic per seed and well formed") {
    TypedTree a = sample_bp(k, root, 3, 42);
    TypedTree b = sample_bp(k, root, 3, 42);
    CHECK(a.parent == b.parent);
    CHECK(a.type == b.type);
    CHECK(a.depth == b.depth);
    CHECK(a.horizon == 3);
    REQUIRE(!a.parent.empty());
    CHECK(a.parent[0] == -1);
    for (size_t v = 1; v < a.parent.size(); ++v) {
      CHECK(a.parent[v] < static_cast<int>(v));
      CHECK(a.depth[v] == a.depth[a.parent[v]] + 1);
      CHECK(a.depth[v] <= 3);
      CHECK(a.depth[v] >= a.depth[v - 1]);
      CHECK(a.type[v] == 0);
    }
    TypedTree c = sample_bp(k, root, 3, 43);
    CHECK((a.parent != c.parent || a.type != c.type));
  }

  SUBCASE("root offspring mean is the expected degree") {
    double total = 0.0;
    const int reps = 20000;
    for (int i = 0; i < reps; ++i)
      total += static_cast<double>(sample_bp(k, root, 1, derive_seed(7, i)).parent.size()) - 1.0;
    CHECK(total / reps == doctest::Approx(2.0).epsilon(0.03));
  }

  SUBCASE("typed sampling respects the root law") {
    FiniteKernel cb = chessboard_kernel(Rat(3), Rat(1));
    TypedTree t0 = sample_bp(cb, {Rat(1), Rat(0)}, 2, 5);
    CHECK(t0.type[0] == 0);
    TypedTree t1 = sample_bp(cb, {Rat(0), Rat(1)}, 2, 5);
    CHECK(t1.type[0] == 1);
    CHECK_THROWS_AS(sample_bp(cb, {Rat(1)}, 2, 5), std::invalid_argument);
    CHECK_THROWS_AS(sample_bp(cb, {Rat(2), Rat(-1)}, 2, 5), std::invalid_argument);
  }

  SUBCASE("the size cap triggers a refusal on explosive trees") {
    FiniteKernel big = constant_kernel(Rat(5));
    int refusals = 0;
    for (int s = 0; s < 10; ++s) {
      try {
        sample_bp(big, root, 20, s, 50);
      } catch (const size_refusal&) {
        ++refusals;
      }
    }
    CHECK(refusals >= 1);
  }
}

TEST_CASE("tree restriction and shape codes") {
  TypedTree t;
  t.parent = {-1, 0, 0, 1};
  t.type = {0, 1, 0, 1};
  t.depth = {0, 1, 1, 2};
  t.horizon = 2;

  CHECK(tree_shape_code(t) == "((())())");
  TypedTree r1 = restrict_tree(t, 1);
  CHECK(r1.parent.size() == 3);
  CHECK(tree_shape_code(r1) == "(()())");
  TypedTree r0 = restrict_tree(t, 0);
  CHECK(r0.parent.size() == 1);
  CHECK(tree_shape_code(r0) == "()");
  CHECK(restrict_tree(t, 5).parent.size() == 4);
}

TEST_CASE("empirical tree law approaches the exact law on a shared cap") {
  FiniteKernel k = constant_kernel(Rat(2));
  std::vector<Rat> root{Rat(1)};
  std::vector<TypedTree> samples;
  const int reps = 100000;
  samples.reserve(reps);
  for (int i = 0; i < reps; ++i)
    samples.push_back(sample_bp(k, root, 2, derive_seed(99, i)));

  TreeLaw emp = empirical_tree_law(samples, 2, 12);
  double mass = emp.truncated;
  for (const auto& [code, p] : emp.p) mass += p;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));

  CHECK(tree_law_tv(emp, exact_tree_law(k, root, 2, 12)) < 0.02);
  CHECK(tree_law_tv(empirical_tree_law(samples, 1, 12),
                    exact_tree_law(k, root, 1, 12)) < 0.01);

  std::vector<TypedTree> low{restrict_tree(samples[0], 1)};
  CHECK_THROWS_AS(empirical_tree_law(low, 2), std::invalid_argument);
}

TEST_CASE("equivalent kernels have close empirical laws") {
  FiniteKernel flat = constant_kernel(Rat(2));
  FiniteKernel cb = chessboard_kernel(Rat(3), Rat(1));
  std::vector<Rat> half{rat_parse("1/2"), rat_parse("1/2")};
  const int reps = 300000;
  std::vector<TypedTree> a, b;
  a.reserve(reps);
  b.reserve(reps);
  for (int i = 0; i < reps; ++i) {
    a.push_back(sample_bp(flat, {Rat(1)}, 2, derive_seed(21, i)));
    b.push_back(sample_bp(cb, half, 2, derive_seed(22, i)));
  }
  CHECK(tree_law_tv(empirical_tree_law(a, 2, 12), empirical_tree_law(b, 2, 12)) < 0.01);
}

TEST_CASE("total variation between tree laws") {
  TreeLaw a, b;
  a.p = {{"()", 0.5}, {"(())", 0.5}};
  b.p = {{"()", 0.25}, {"(()())", 0.25}};
  b.truncated = 0.5;
  CHECK(tree_law_tv(a, b) == doctest::Approx(0.75));
  CHECK(tree_law_tv(a, a) == doctest::Approx(0.0));
}

TEST_CASE("root reconstruction from deep labels") {
  SUBCASE("deterministic and validated") {
    ReconstructionResult a = reconstruct_root(2.0, 1.0, 3, 50, 5);
    ReconstructionResult b = reconstruct_root(2.0, 1.0, 3, 50, 5);
    CHECK(a.accuracy == b.accuracy);
    CHECK(a.surviving == b.surviving);
    CHECK_THROWS_AS(reconstruct_root(0.0, 0.0, 3, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(reconstruct_root(2.0, 3.0, 3, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(reconstruct_root(2.0, 1.0, 0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(reconstruct_root(2.0, 1.0, 3, 0, 1), std::invalid_argument);
  }

  SUBCASE("full asymmetry pins the root exactly on surviving trees") {
    ReconstructionResult r = reconstruct_root(2.0, 2.0, 3, 200, 11);
    CHECK(r.surviving >= 1);
    CHECK(r.accuracy_surviving == doctest::Approx(1.0).epsilon(1e-12));
    double expected = (static_cast<double>(r.surviving) +
                       0.5 * static_cast<double>(r.trials - r.surviving)) /
                      static_cast<double>(r.trials);
    CHECK(r.accuracy == doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("no asymmetry means no information") {
    ReconstructionResult r = reconstruct_root(2.0, 0.0, 3, 100, 11);
    CHECK(r.accuracy == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.accuracy_surviving == doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("strong asymmetry reconstructs well above chance") {
    ReconstructionResult r = reconstruct_root(2.0, 1.9, 4, 300, 17);
    CHECK(r.accuracy_surviving > 0.75);
  }
}
