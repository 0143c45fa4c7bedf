#pragma once

#include <cstdint>
#include <vector>

#include "sparsegraph/graph.hpp"
#include "sparsegraph/kernel.hpp"

namespace sg {

// Normalized ordered-pair edge density e(U,W)/(p|U||W|); an edge inside
// U ∩ W counts twice.
double pair_density(const Graph& g, const std::vector<int>& u,
                    const std::vector<int>& w, const Rat& p);

// Step function with finitely many blocks: block i has measure mass[i] and
// the (i,j) block carries the signed constant value[i][j].
struct BlockMatrix {
  std::vector<double> mass;
  std::vector<std::vector<double>> value;
};

BlockMatrix kernel_to_blocks(const FiniteKernel& k);

// Signed difference of the two graphs' step kernels under the identity
// labelling, blocks of measure 1/n and entries (1[uv in g1] - 1[uv in g2])/p.
BlockMatrix step_difference(const Graph& g1, const Graph& g2, const Rat& p);

// sup over block sets S, T of |sum of value*area over S x T|.  Exact mode
// enumerates S (n <= 24 blocks) and chooses T analytically.
double cut_norm_exact(const BlockMatrix& m);

// Alternating-ascent lower bound on the cut norm.
double cut_norm_heuristic(const BlockMatrix& m, int restarts, std::uint64_t seed);

// Graph cut metric: min over relabellings of G2 of the cut norm of the step
// difference.  Exact mode enumerates all n! permutations (n <= 8).
double cut_distance_exact(const Graph& g1, const Graph& g2, const Rat& p);

// Upper bound: best relabelling found by degree-guided local search; the
// inner cut norm is exact for n <= 24 blocks, so the value is a true upper
// bound there.
double cut_distance_heuristic(const Graph& g1, const Graph& g2, const Rat& p,
                              int restarts, std::uint64_t seed);

// Normalized edit distance: min over relabellings of |E1 delta E2'|/(p n^2).
double edit_distance_exact(const Graph& g1, const Graph& g2, const Rat& p);

double edit_distance_heuristic(const Graph& g1, const Graph& g2, const Rat& p,
                               int restarts, std::uint64_t seed);

struct SubgraphCounts {
  long long hom = 0;        // adjacency-preserving maps
  long long emb = 0;        // injective ones
  double s_tilde = 0.0;     // emb / n
  double t_hom = 0.0;       // hom / (n^f p^e)
  double t_emb = 0.0;       // emb / (n falling-factorial f, times p^e)
};

// Backtracking counts of maps from a small connected pattern into g.
SubgraphCounts subgraph_counts(const Graph& pattern, const Graph& g, const Rat& p);

// Product-topology combinator: sum over i of 2^-(i+1) * min(d_i, 1).
double combine_product_metric(const std::vector<double>& coords);

}  // namespace sg
