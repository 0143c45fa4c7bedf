#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sparsegraph/graph.hpp"

namespace sg {

// Law of the rooted radius-t ball around a uniform vertex, kept as exact
// per-code counts out of n.
struct NeighbourhoodLaw {
  int t = 0;
  long long n = 0;
  std::map<std::string, long long> counts;

  double mass(const std::string& code) const;
};

// Optional colouring labels the ball vertices before canonization.
NeighbourhoodLaw neighbourhood_law(const Graph& g, int t,
                                   const std::vector<int>* colouring = nullptr);

double law_tv(const NeighbourhoodLaw& a, const NeighbourhoodLaw& b);
bool law_equal(const NeighbourhoodLaw& a, const NeighbourhoodLaw& b);

struct ColouredSpectrum {
  int k = 0;
  int t = 0;
  std::vector<NeighbourhoodLaw> laws;
  bool exact = false;
};

ColouredSpectrum coloured_spectrum_exact(const Graph& g, int k, int t,
                                         long long budget);
ColouredSpectrum coloured_spectrum_search(const Graph& g, int k, int t,
                                          long long budget, std::uint64_t seed);

// Hausdorff distance over total variation between two sets of laws.
double law_set_distance(const std::vector<NeighbourhoodLaw>& x,
                        const std::vector<NeighbourhoodLaw>& y);

// Sum over 1 <= k <= k_max, 1 <= t <= t_max of 2^{-k-t} * Hausdorff-over-TV
// between the coloured spectra of the two graphs.
double coloured_distance(const Graph& g1, const Graph& g2, int k_max, int t_max,
                         bool exact, long long budget, std::uint64_t seed);

}  // namespace sg
