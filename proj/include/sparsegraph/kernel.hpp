#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sparsegraph/rational.hpp"

namespace sg {

// Map between type spaces: to[i] is the image of type i.
struct TypeMap {
  std::vector<int> to;
  int codomain = 0;
};

// Symmetric nonnegative rate matrix kappa on a finite weighted type space mu.
// mu entries are strictly positive and sum to one (zero-mass types are
// dropped on construction).  `exact` records whether the entries came from
// exact rational input; when false, comparisons fall back to a tolerance.
struct FiniteKernel {
  std::vector<Rat> mu;
  std::vector<std::vector<Rat>> kappa;
  std::vector<std::string> names;  // empty, or one name per type
  bool exact = true;

  int size() const { return static_cast<int>(mu.size()); }
};

FiniteKernel make_kernel(std::vector<Rat> mu, std::vector<std::vector<Rat>> kappa,
                         bool exact = true, std::vector<std::string> names = {});

// One type of mass 1 with rate c: the classical G(n, c/n) kernel.
FiniteKernel constant_kernel(const Rat& c);

// Two equal-mass types, rate a within a type and b across.
FiniteKernel chessboard_kernel(const Rat& a, const Rat& b);

// lambda_1(x) = sum_y kappa[x][y] mu[y].
Rat expected_degree(const FiniteKernel& k, int x);

// Spectral norm of the integral operator, i.e. of sqrt(mu_i) k_ij sqrt(mu_j).
double operator_norm(const FiniteKernel& k);

struct RefinementReport {
  bool ok = false;
  double measure_residual = 0.0;   // worst |sum_{tau(i)=j} mu1[i] - mu2[j]|
  double intensity_residual = 0.0; // worst block-intensity mismatch
  std::string witness;             // empty when ok
};

// Checks that `fine` refines `coarse` along tau: tau preserves measure and
// block-aggregated intensities match, exactly for exact kernels and within
// tol otherwise.
RefinementReport verify_refinement(const FiniteKernel& fine, const FiniteKernel& coarse,
                                   const TypeMap& tau, double tol = 1e-9);

struct Refinement {
  FiniteKernel kernel;
  TypeMap to_first;   // refined type -> type of the first input
  TypeMap to_second;  // refined type -> type of the second input
};

// Common refinement of k1 and k2 over their shared coarsening kc.
// Throws refinement_error (with a witness) if either claimed refinement
// relation fails to verify.
Refinement common_refinement(const FiniteKernel& k1, const FiniteKernel& k2,
                             const FiniteKernel& kc, const TypeMap& tau1,
                             const TypeMap& tau2, double tol = 1e-9);

struct Coarsening {
  FiniteKernel kernel;
  TypeMap from_first;   // type of the first marginal -> coarse type
  TypeMap from_second;  // type of the second marginal -> coarse type
};

// Given a kernel kr that refines two marginal kernels along tau1 and tau2
// (the marginals are derived here and the refinement relations re-checked),
// builds their common coarsening from the components of the bipartite graph
// pairing tau1- and tau2-types through kr's types.
Coarsening common_coarsening(const FiniteKernel& kr, const TypeMap& tau1,
                             const TypeMap& tau2, double tol = 1e-9);

struct CanonicalCoarsening {
  FiniteKernel kernel;
  TypeMap projection;  // input type -> canonical type
};

// Coarsest quotient with constant block-aggregated intensities, computed by
// iterative partition refinement (at most size() rounds).
CanonicalCoarsening canonical_coarsening(const FiniteKernel& k, double tol = 1e-9);

// Derived coarse kernel along tau; throws refinement_error if the
// aggregated intensities are not constant on tau's fibres.
FiniteKernel quotient_kernel(const FiniteKernel& k, const TypeMap& tau, double tol = 1e-9);

// Type bijection carrying (mu, kappa) of a onto b, if one exists.
std::optional<std::vector<int>> kernel_isomorphism(const FiniteKernel& a,
                                                   const FiniteKernel& b,
                                                   double tol = 1e-9);

// Whether k1 and k2 induce the same branching-process law: canonical
// coarsenings isomorphic as weighted kernels.
bool pi_equal(const FiniteKernel& k1, const FiniteKernel& k2, double tol = 1e-9);

}  // namespace sg
