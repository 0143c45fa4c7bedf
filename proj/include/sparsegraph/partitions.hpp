#pragma once

#include <cstdint>
#include <vector>

#include "sparsegraph/graph.hpp"
#include "sparsegraph/kernel.hpp"

namespace sg {

// k x k symmetric matrix of normalized pair densities between parts.
using DensityMatrix = std::vector<std::vector<double>>;

struct PartitionSpectrum {
  int k = 0;
  std::vector<DensityMatrix> matrices;  // deduplicated, sorted
  long long multiset_size = 0;          // ordered balanced partitions seen
  bool exact = false;                   // full enumeration vs inner approximation
};

// Density matrix of one ordered partition (types[v] = part of v); parts must
// be nonempty.
DensityMatrix partition_matrix(const Graph& g, const std::vector<int>& part,
                               int k, const Rat& p);

// Exact mode: every ordered balanced k-partition (sizes differing by at most
// one); refuses when their number exceeds `budget`.
PartitionSpectrum partition_spectrum_exact(const Graph& g, int k, const Rat& p,
                                           long long budget);

// Search mode: uniformly sampled balanced partitions plus swap-based local
// searches extremizing matrix entries and random linear functionals (and a
// BFS-parity start for k = 2); an inner approximation of the true spectrum.
PartitionSpectrum partition_spectrum_search(const Graph& g, int k, const Rat& p,
                                            long long budget, std::uint64_t seed);

enum class SetDistanceKind { hausdorff, matching, weighted_matching };

// Distance between two sets of density matrices under entrywise sup norm:
// Hausdorff, minimax fractional matching, or average-cost fractional
// matching.  `empty_value` is returned when exactly one side is empty.
double set_distance(const std::vector<DensityMatrix>& x,
                    const std::vector<DensityMatrix>& y, SetDistanceKind kind,
                    double empty_value);

// Product-combined partition metric over k = 2..k_max with weights 2^-k:
// sum of 2^-k * min(d(M_k(g1), M_k(g2)), 1).
double partition_distance(const Graph& g1, const Graph& g2, const Rat& p,
                          int k_max, bool exact, long long budget,
                          std::uint64_t seed,
                          SetDistanceKind kind = SetDistanceKind::hausdorff);

// Density matrix of a fractional split of a kernel: split[x][a] is the
// fraction of type x assigned to part a (rows sum to 1).  Indicator splits
// of a graph's step kernel reproduce partition_matrix exactly.
DensityMatrix kernel_split_matrix(const FiniteKernel& k,
                                  const std::vector<std::vector<double>>& split);

}  // namespace sg
