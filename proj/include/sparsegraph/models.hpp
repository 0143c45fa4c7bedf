#pragma once

#include <cstdint>
#include <vector>

#include "sparsegraph/graph.hpp"
#include "sparsegraph/kernel.hpp"

namespace sg {

// Sparse inhomogeneous random graph: vertex types drawn iid from mu, each
// pair {u,v} independently an edge with probability min(p*kappa[x_u][x_v], 1).
// Types are kept as the graph's annotation.
Graph sample_inhomogeneous(const FiniteKernel& k, int n, const Rat& p,
                           std::uint64_t seed);

// Random balanced two-part split (part 0 gets the extra vertex when n is
// odd); within-part pairs are edges with probability p_in, cross pairs with
// probability p_out.  The part is kept as the type annotation.
Graph sample_planted_bisection(int n, double p_in, double p_out,
                               std::uint64_t seed);

struct WeightedMotif {
  Graph motif;    // connected, at least two vertices
  double weight;  // w_F >= 0
};

// For each motif F on f vertices, Binomial(n_(f)/|Aut F|, w_F/n^(f-1)) many
// unlabeled placements are drawn uniformly and their edges unioned;
// duplicates collapse.
Graph sample_clique_model(int n, const std::vector<WeightedMotif>& family,
                          std::uint64_t seed);

// Uniform partition of the n*d vertex stubs into triplets, one triangle per
// triplet; the multigraph keeps loops and parallel edges.
Multigraph sample_triangle_config_multi(int n, int d, std::uint64_t seed);

// Simplified triangle configuration graph.
Graph sample_triangle_config(int n, int d, std::uint64_t seed);

// Step kernel of a graph: n types of mass 1/n, kappa = 1/p on edge blocks.
FiniteKernel graph_to_kernel(const Graph& g, const Rat& p);

// Automorphism group order of a small graph (brute force over vertex
// permutations).
long graph_aut_order(const Graph& g);

}  // namespace sg
