#include "sparsegraph/local.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sparsegraph/canonical.hpp"
#include "sparsegraph/errors.hpp"
#include "sparsegraph/rng.hpp"

namespace sg {

double NeighbourhoodLaw::mass(const std::string& code) const {
  auto it = counts.find(code);
  if (it == counts.end()) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(n);
}

NeighbourhoodLaw neighbourhood_law(const Graph& g, int t,
                                   const std::vector<int>* colouring) {
  if (g.n < 1) throw std::invalid_argument("neighbourhood_law: empty graph");
  if (t < 0) throw std::invalid_argument("neighbourhood_law: negative radius");
  if (colouring) {
    if (static_cast<int>(colouring->size()) != g.n)
      throw std::invalid_argument("neighbourhood_law: colouring size mismatch");
    for (int c : *colouring)
      if (c < 0) throw std::invalid_argument("neighbourhood_law: negative colour");
  }
  auto adj = adjacency_lists(g);
  NeighbourhoodLaw law;
  law.t = t;
  law.n = g.n;
  for (int v = 0; v < g.n; ++v) {
    Ball ball = extract_ball(adj, v, t);
    std::string code;
    if (colouring) {
      std::vector<std::string> labels(ball.vertex.size());
      for (size_t i = 0; i < ball.vertex.size(); ++i)
        labels[i] = std::to_string((*colouring)[ball.vertex[i]]);
      code = ball_code(ball, &labels);
    } else {
      code = ball_code(ball);
    }
    ++law.counts[code];
  }
  return law;
}

double law_tv(const NeighbourhoodLaw& a, const NeighbourhoodLaw& b) {
  if (a.t != b.t) throw std::invalid_argument("law_tv: radius mismatch");
  if (a.n < 1 || b.n < 1) throw std::invalid_argument("law_tv: empty law");
  double total = 0.0;
  for (const auto& [code, cnt] : a.counts) {
    auto it = b.counts.find(code);
    double pb = it == b.counts.end()
                    ? 0.0
                    : static_cast<double>(it->second) / static_cast<double>(b.n);
    total += std::abs(static_cast<double>(cnt) / static_cast<double>(a.n) - pb);
  }
  for (const auto& [code, cnt] : b.counts)
    if (!a.counts.count(code))
      total += static_cast<double>(cnt) / static_cast<double>(b.n);
  return total / 2.0;
}

bool law_equal(const NeighbourhoodLaw& a, const NeighbourhoodLaw& b) {
  if (a.t != b.t || a.n < 1 || b.n < 1) return false;
  for (const auto& [code, cnt] : a.counts) {
    auto it = b.counts.find(code);
    long long other = it == b.counts.end() ? 0 : it->second;
    if (cnt * b.n != other * a.n) return false;
  }
  for (const auto& [code, cnt] : b.counts)
    if (!a.counts.count(code) && cnt != 0) return false;
  return true;
}

namespace {

NeighbourhoodLaw law_for(const Graph& g, int k, int t,
                         const std::vector<int>& colouring) {
  if (k == 1) return neighbourhood_law(g, t);
  return neighbourhood_law(g, t, &colouring);
}

void dedup_laws(ColouredSpectrum& s) {
  std::sort(s.laws.begin(), s.laws.end(),
            [](const NeighbourhoodLaw& a, const NeighbourhoodLaw& b) {
              return a.counts < b.counts;
            });
  s.laws.erase(std::unique(s.laws.begin(), s.laws.end(),
                           [](const NeighbourhoodLaw& a, const NeighbourhoodLaw& b) {
                             return a.counts == b.counts;
                           }),
               s.laws.end());
}

}  // namespace

ColouredSpectrum coloured_spectrum_exact(const Graph& g, int k, int t,
                                         long long budget) {
  if (k < 1) throw std::invalid_argument("coloured_spectrum: k must be >= 1");
  if (g.n < 1) throw std::invalid_argument("coloured_spectrum: empty graph");
  long long total = 1;
  for (int v = 0; v < g.n; ++v) {
    if (total > budget / k + 1)
      throw size_refusal("coloured_spectrum_exact: k^n colourings exceed the budget");
    total *= k;
  }
  if (total > budget)
    throw size_refusal("coloured_spectrum_exact: k^n colourings exceed the budget");

  ColouredSpectrum out;
  out.k = k;
  out.t = t;
  out.exact = true;
  std::vector<int> colouring(g.n, 0);
  while (true) {
    out.laws.push_back(law_for(g, k, t, colouring));
    int pos = g.n - 1;
    while (pos >= 0 && colouring[pos] == k - 1) colouring[pos--] = 0;
    if (pos < 0) break;
    ++colouring[pos];
  }
  dedup_laws(out);
  return out;
}

ColouredSpectrum coloured_spectrum_search(const Graph& g, int k, int t,
                                          long long budget, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("coloured_spectrum: k must be >= 1");
  if (g.n < 1) throw std::invalid_argument("coloured_spectrum: empty graph");
  ColouredSpectrum out;
  out.k = k;
  out.t = t;
  out.exact = false;

  Rng rng = make_rng(seed);
  std::uniform_int_distribution<int> pick_colour(0, k - 1);
  std::uniform_int_distribution<int> pick_vertex(0, g.n - 1);

  auto random_colouring = [&] {
    std::vector<int> c(g.n);
    for (int& x : c) x = pick_colour(rng);
    return c;
  };

  long long evals = 0;
  auto spend = [&](const std::vector<int>& c) {
    ++evals;
    return law_for(g, k, t, c);
  };

  // the constant colourings, then random samples for a quarter of the budget
  for (int c0 = 0; c0 < k && evals < budget; ++c0) {
    std::vector<int> c(g.n, c0);
    out.laws.push_back(spend(c));
  }
  while (evals < std::max<long long>(1, budget / 4)) out.laws.push_back(spend(random_colouring()));

  // hill climbs that push a colouring's law away from everything recorded
  auto diversity = [&](const NeighbourhoodLaw& law) {
    double nearest = 2.0;
    for (const auto& seen : out.laws) nearest = std::min(nearest, law_tv(law, seen));
    return nearest;
  };
  while (evals < budget) {
    std::vector<int> colouring = random_colouring();
    NeighbourhoodLaw current = spend(colouring);
    double value = diversity(current);
    long long climb_end = std::min(budget, evals + std::max<long long>(8, budget / 8));
    while (evals < climb_end) {
      int v = pick_vertex(rng);
      int old = colouring[v];
      int next = pick_colour(rng);
      if (next == old) continue;
      colouring[v] = next;
      NeighbourhoodLaw candidate = spend(colouring);
      double cv = diversity(candidate);
      if (cv > value + 1e-15) {
        value = cv;
        current = std::move(candidate);
      } else {
        colouring[v] = old;
      }
    }
    out.laws.push_back(current);
  }
  dedup_laws(out);
  return out;
}

double law_set_distance(const std::vector<NeighbourhoodLaw>& x,
                        const std::vector<NeighbourhoodLaw>& y) {
  if (x.empty() || y.empty())
    throw std::invalid_argument("law_set_distance: empty set of laws");
  double worst = 0.0;
  for (const auto& a : x) {
    double nearest = 2.0;
    for (const auto& b : y) nearest = std::min(nearest, law_tv(a, b));
    worst = std::max(worst, nearest);
  }
  for (const auto& b : y) {
    double nearest = 2.0;
    for (const auto& a : x) nearest = std::min(nearest, law_tv(a, b));
    worst = std::max(worst, nearest);
  }
  return worst;
}

double coloured_distance(const Graph& g1, const Graph& g2, int k_max, int t_max,
                         bool exact, long long budget, std::uint64_t seed) {
  if (k_max < 1 || t_max < 1)
    throw std::invalid_argument("coloured_distance: k_max and t_max must be >= 1");
  double total = 0.0;
  for (int k = 1; k <= k_max; ++k)
    for (int t = 1; t <= t_max; ++t) {
      ColouredSpectrum a =
          exact ? coloured_spectrum_exact(g1, k, t, budget)
                : coloured_spectrum_search(g1, k, t, budget,
                                           derive_seed(seed, 2 * (k * 64 + t)));
      ColouredSpectrum b =
          exact ? coloured_spectrum_exact(g2, k, t, budget)
                : coloured_spectrum_search(g2, k, t, budget,
                                           derive_seed(seed, 2 * (k * 64 + t) + 1));
      double d = law_set_distance(a.laws, b.laws);
      total += std::pow(2.0, -(k + t)) * std::min(d, 1.0);
    }
  return total;
}

}  // namespace sg
