#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "sparsegraph/kernel.hpp"

namespace sg {

// Multi-type branching-process tree sampled to a fixed depth horizon.
// Vertices are in BFS order, parent[0] == -1.
struct TypedTree {
  std::vector<int> parent;
  std::vector<int> type;
  std::vector<int> depth;
  int horizon = 0;
};

// Poisson offspring: a type-x particle bears independent Poisson counts of
// type-y children with mean kappa[x][y] * mu[y], down to depth `horizon`.
// Throws size_refusal when the tree exceeds `cap` vertices.
TypedTree sample_bp(const FiniteKernel& k, const std::vector<Rat>& root_law,
                    int horizon, std::uint64_t seed, std::size_t cap = 1ull << 22);

// Drops vertices deeper than `depth`.
TypedTree restrict_tree(const TypedTree& tree, int depth);

// Shape of the tree (types forgotten) as a canonical rooted-tree code.
std::string tree_shape_code(const TypedTree& tree);

// Nested measure hierarchy: level 1 is the scalar intensity lambda_1(x);
// level m is the measure sending each distinct level-(m-1) value v to the
// total intensity kappa[x][y] mu[y] of types y whose level-(m-1) value is v.
struct NestedMeasure {
  int level = 1;
  Rat scalar;  // level 1 only
  std::vector<std::pair<NestedMeasure, Rat>> atoms;  // level > 1, sorted by key

  std::string key() const;
  Rat total_mass() const;
  bool equal(const NestedMeasure& other, bool exact, double tol = 1e-9) const;
};

NestedMeasure lambda_hierarchy(const FiniteKernel& k, int x, int level);

// P(Po(Lambda) = j) for a finite mixing law given as (value, weight) pairs.
double mixed_poisson_pmf(const std::vector<std::pair<double, double>>& mixing, int j);

// Law of the depth-t shape of the branching-process tree.  Probabilities are
// exact per shape; shapes with more than `size_cap` vertices are not
// enumerated and their total mass is reported in `truncated`.
struct TreeLaw {
  int t = 0;
  std::map<std::string, double> p;  // canonical shape code -> probability
  double truncated = 0.0;
};

TreeLaw exact_tree_law(const FiniteKernel& k, const std::vector<Rat>& root_law,
                       int t, int size_cap);

// Frequency law of the depth-t restrictions of sampled trees.  When a finite
// size_cap is given, restrictions with more than size_cap vertices are pooled
// into `truncated`, mirroring the exact law so that both live on the same
// partition of tree space.
TreeLaw empirical_tree_law(const std::vector<TypedTree>& samples, int t,
                           int size_cap = std::numeric_limits<int>::max());

// Total variation distance; the truncated masses are compared as one extra
// shared outcome, so laws built with the same size_cap are compared on the
// quotient partition {enumerated shapes} + {rest}.
double tree_law_tv(const TreeLaw& a, const TreeLaw& b);

// Root-type reconstruction for the two-type kernel with rates c+delta within
// a type and c-delta across: posterior of the root type given the shape and
// the depth-t type labels, averaged over `trials` sampled trees.
struct ReconstructionResult {
  double accuracy = 0.5;             // mean posterior mass on the true root type
  double accuracy_surviving = 0.5;   // same, conditioned on reaching depth t
  long trials = 0;
  long surviving = 0;
};

ReconstructionResult reconstruct_root(double c, double delta, int t, long trials,
                                      std::uint64_t seed, std::size_t cap = 1ull << 22);

}  // namespace sg
