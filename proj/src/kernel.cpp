#include "sparsegraph/kernel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "sparsegraph/errors.hpp"

namespace sg {

namespace {

bool values_equal(const Rat& a, const Rat& b, bool exact, double tol) {
  if (exact) return a == b;
  return std::abs(rat_to_double(a - b)) <= tol;
}

std::string describe(const Rat& q) { return rat_to_string(q); }

void check_type_map(const TypeMap& tau, int domain, const char* what) {
  if (static_cast<int>(tau.to.size()) != domain)
    throw std::invalid_argument(std::string(what) + ": map size does not match type count");
  for (int v : tau.to)
    if (v < 0 || v >= tau.codomain)
      throw std::invalid_argument(std::string(what) + ": image out of range");
}

}  // namespace

FiniteKernel make_kernel(std::vector<Rat> mu, std::vector<std::vector<Rat>> kappa,
                         bool exact, std::vector<std::string> names) {
  const size_t n = mu.size();
  if (kappa.size() != n)
    throw std::invalid_argument("kernel: mu and kappa sizes disagree");
  if (!names.empty() && names.size() != n)
    throw std::invalid_argument("kernel: wrong number of type names");
  for (const auto& row : kappa)
    if (row.size() != n) throw std::invalid_argument("kernel: kappa is not square");
  // mpq_class(p, q) does not reduce; canonicalize here so that validation and
  // all later arithmetic see canonical values.
  for (auto& m : mu) m.canonicalize();
  for (auto& row : kappa)
    for (auto& v : row) v.canonicalize();
  for (size_t i = 0; i < n; ++i) {
    if (mu[i] < 0) throw std::invalid_argument("kernel: negative type mass");
    for (size_t j = 0; j < n; ++j) {
      if (kappa[i][j] < 0) throw std::invalid_argument("kernel: negative rate");
      if (kappa[i][j] != kappa[j][i])
        throw std::invalid_argument("kernel: kappa is not symmetric");
    }
  }

  FiniteKernel k;
  k.exact = exact;
  std::vector<int> keep;
  for (size_t i = 0; i < n; ++i)
    if (mu[i] > 0) keep.push_back(static_cast<int>(i));
  if (keep.empty()) throw std::invalid_argument("kernel: no positive-mass types");

  Rat total = 0;
  for (int i : keep) total += mu[i];
  for (int i : keep) {
    k.mu.push_back(mu[i] / total);
    if (!names.empty()) k.names.push_back(names[i]);
  }
  for (int i : keep) {
    std::vector<Rat> row;
    row.reserve(keep.size());
    for (int j : keep) row.push_back(kappa[i][j]);
    k.kappa.push_back(std::move(row));
  }
  return k;
}

FiniteKernel constant_kernel(const Rat& c) {
  return make_kernel({Rat(1)}, {{c}});
}

FiniteKernel chessboard_kernel(const Rat& a, const Rat& b) {
  return make_kernel({Rat(1, 2), Rat(1, 2)}, {{a, b}, {b, a}});
}

Rat expected_degree(const FiniteKernel& k, int x) {
  if (x < 0 || x >= k.size()) throw std::invalid_argument("expected_degree: bad type");
  Rat s = 0;
  for (int y = 0; y < k.size(); ++y) s += k.kappa[x][y] * k.mu[y];
  return s;
}

double operator_norm(const FiniteKernel& k) {
  const int n = k.size();
  Eigen::MatrixXd m(n, n);
  std::vector<double> root(n);
  for (int i = 0; i < n; ++i) root[i] = std::sqrt(rat_to_double(k.mu[i]));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = root[i] * rat_to_double(k.kappa[i][j]) * root[j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  double norm = 0.0;
  for (int i = 0; i < n; ++i) norm = std::max(norm, std::abs(solver.eigenvalues()[i]));
  return norm;
}

RefinementReport verify_refinement(const FiniteKernel& fine, const FiniteKernel& coarse,
                                   const TypeMap& tau, double tol) {
  check_type_map(tau, fine.size(), "verify_refinement");
  if (tau.codomain != coarse.size())
    throw std::invalid_argument("verify_refinement: codomain does not match coarse kernel");

  const bool exact = fine.exact && coarse.exact;
  RefinementReport report;
  report.ok = true;

  std::vector<Rat> fibre_mass(coarse.size(), Rat(0));
  for (int i = 0; i < fine.size(); ++i) fibre_mass[tau.to[i]] += fine.mu[i];
  for (int j = 0; j < coarse.size(); ++j) {
    double res = std::abs(rat_to_double(fibre_mass[j] - coarse.mu[j]));
    report.measure_residual = std::max(report.measure_residual, res);
    if (!values_equal(fibre_mass[j], coarse.mu[j], exact, tol) && report.ok) {
      report.ok = false;
      std::ostringstream os;
      os << "measure not preserved at coarse type " << j << ": fibre mass "
         << describe(fibre_mass[j]) << " vs " << describe(coarse.mu[j]);
      report.witness = os.str();
    }
  }

  for (int x = 0; x < fine.size(); ++x) {
    std::vector<Rat> block(coarse.size(), Rat(0));
    for (int y = 0; y < fine.size(); ++y) block[tau.to[y]] += fine.kappa[x][y] * fine.mu[y];
    for (int j = 0; j < coarse.size(); ++j) {
      Rat want = coarse.kappa[tau.to[x]][j] * coarse.mu[j];
      double res = std::abs(rat_to_double(block[j] - want));
      report.intensity_residual = std::max(report.intensity_residual, res);
      if (!values_equal(block[j], want, exact, tol) && report.ok) {
        report.ok = false;
        std::ostringstream os;
        os << "intensity mismatch at fine type " << x << ", coarse type " << j << ": "
           << describe(block[j]) << " vs " << describe(want);
        report.witness = os.str();
      }
    }
  }
  return report;
}

Refinement common_refinement(const FiniteKernel& k1, const FiniteKernel& k2,
                             const FiniteKernel& kc, const TypeMap& tau1,
                             const TypeMap& tau2, double tol) {
  RefinementReport r1 = verify_refinement(k1, kc, tau1, tol);
  if (!r1.ok) throw refinement_error("first input does not refine the coarsening: " + r1.witness);
  RefinementReport r2 = verify_refinement(k2, kc, tau2, tol);
  if (!r2.ok) throw refinement_error("second input does not refine the coarsening: " + r2.witness);

  struct Pair {
    int i, j, c;
  };
  std::vector<Pair> pairs;
  for (int i = 0; i < k1.size(); ++i)
    for (int j = 0; j < k2.size(); ++j)
      if (tau1.to[i] == tau2.to[j]) pairs.push_back({i, j, tau1.to[i]});

  const size_t m = pairs.size();
  std::vector<Rat> mu(m);
  for (size_t e = 0; e < m; ++e)
    mu[e] = k1.mu[pairs[e].i] * k2.mu[pairs[e].j] / kc.mu[pairs[e].c];

  std::vector<std::vector<Rat>> kappa(m, std::vector<Rat>(m, Rat(0)));
  for (size_t e = 0; e < m; ++e)
    for (size_t f = 0; f < m; ++f) {
      const Rat& denom = kc.kappa[pairs[e].c][pairs[f].c];
      if (denom == 0) continue;  // refinement forces the numerator to vanish too
      kappa[e][f] = k1.kappa[pairs[e].i][pairs[f].i] * k2.kappa[pairs[e].j][pairs[f].j] / denom;
    }

  Refinement out;
  out.kernel = make_kernel(std::move(mu), std::move(kappa), k1.exact && k2.exact && kc.exact);
  out.to_first.codomain = k1.size();
  out.to_second.codomain = k2.size();
  for (size_t e = 0; e < m; ++e) {
    out.to_first.to.push_back(pairs[e].i);
    out.to_second.to.push_back(pairs[e].j);
  }
  return out;
}

FiniteKernel quotient_kernel(const FiniteKernel& k, const TypeMap& tau, double tol) {
  check_type_map(tau, k.size(), "quotient_kernel");
  const int m = tau.codomain;
  std::vector<std::vector<int>> fibre(m);
  for (int i = 0; i < k.size(); ++i) fibre[tau.to[i]].push_back(i);
  for (int j = 0; j < m; ++j)
    if (fibre[j].empty())
      throw std::invalid_argument("quotient_kernel: type map is not surjective");

  std::vector<Rat> mu(m, Rat(0));
  for (int i = 0; i < k.size(); ++i) mu[tau.to[i]] += k.mu[i];

  std::vector<std::vector<Rat>> kappa(m, std::vector<Rat>(m, Rat(0)));
  for (int j = 0; j < m; ++j) {
    for (int jp = 0; jp < m; ++jp) {
      Rat first(0);
      for (int pos = 0; pos < static_cast<int>(fibre[j].size()); ++pos) {
        int x = fibre[j][pos];
        Rat v(0);
        for (int y : fibre[jp]) v += k.kappa[x][y] * k.mu[y];
        if (pos == 0) {
          first = v;
        } else if (!values_equal(v, first, k.exact, tol)) {
          std::ostringstream os;
          os << "quotient is not defined: types " << fibre[j][0] << " and " << x
             << " aggregate differently into block " << jp << " (" << describe(first)
             << " vs " << describe(v) << ")";
          throw refinement_error(os.str());
        }
      }
      kappa[j][jp] = first / mu[jp];
    }
  }
  return make_kernel(std::move(mu), std::move(kappa), k.exact);
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Coarsening common_coarsening(const FiniteKernel& kr, const TypeMap& tau1,
                             const TypeMap& tau2, double tol) {
  check_type_map(tau1, kr.size(), "common_coarsening");
  check_type_map(tau2, kr.size(), "common_coarsening");

  FiniteKernel k1 = quotient_kernel(kr, tau1, tol);
  FiniteKernel k2 = quotient_kernel(kr, tau2, tol);
  const int n1 = k1.size(), n2 = k2.size();

  // Pair the two quotient type spaces through kr's types and take components.
  UnionFind uf(n1 + n2);
  for (int e = 0; e < kr.size(); ++e) uf.unite(tau1.to[e], n1 + tau2.to[e]);

  std::vector<int> comp(n1 + n2, -1);
  int ncomp = 0;
  for (int v = 0; v < n1 + n2; ++v) {
    int r = uf.find(v);
    if (comp[r] < 0) comp[r] = ncomp++;
    comp[v] = comp[r];
  }

  std::vector<Rat> mu(ncomp, Rat(0)), mu2(ncomp, Rat(0));
  for (int j = 0; j < n1; ++j) mu[comp[j]] += k1.mu[j];
  for (int j = 0; j < n2; ++j) mu2[comp[n1 + j]] += k2.mu[j];
  for (int c = 0; c < ncomp; ++c)
    if (!values_equal(mu[c], mu2[c], kr.exact, tol))
      throw refinement_error("inconsistent refinement: component masses disagree");

  // lambda(e, C') must be constant over kr-types e in a fixed component.
  std::vector<int> comp_of_type(kr.size());
  for (int e = 0; e < kr.size(); ++e) comp_of_type[e] = comp[tau1.to[e]];

  std::vector<std::vector<Rat>> lambda(ncomp, std::vector<Rat>(ncomp, Rat(0)));
  std::vector<int> seen(ncomp, 0);
  for (int e = 0; e < kr.size(); ++e) {
    std::vector<Rat> row(ncomp, Rat(0));
    for (int f = 0; f < kr.size(); ++f)
      row[comp_of_type[f]] += kr.kappa[e][f] * kr.mu[f];
    int c = comp_of_type[e];
    if (!seen[c]) {
      lambda[c] = row;
      seen[c] = 1;
    } else {
      for (int cp = 0; cp < ncomp; ++cp)
        if (!values_equal(row[cp], lambda[c][cp], kr.exact, tol))
          throw refinement_error("inconsistent refinement: intensities vary inside a component");
    }
  }

  std::vector<std::vector<Rat>> kappa(ncomp, std::vector<Rat>(ncomp, Rat(0)));
  for (int c = 0; c < ncomp; ++c)
    for (int cp = 0; cp < ncomp; ++cp) kappa[c][cp] = lambda[c][cp] / mu[cp];

  Coarsening out;
  out.kernel = make_kernel(std::move(mu), std::move(kappa), kr.exact);
  out.from_first.codomain = ncomp;
  out.from_second.codomain = ncomp;
  for (int j = 0; j < n1; ++j) out.from_first.to.push_back(comp[j]);
  for (int j = 0; j < n2; ++j) out.from_second.to.push_back(comp[n1 + j]);
  return out;
}

CanonicalCoarsening canonical_coarsening(const FiniteKernel& k, double tol) {
  const int n = k.size();
  std::vector<int> block(n, 0);
  int nblocks = 1;

  for (int round = 0; round < n; ++round) {
    // Signature of x: aggregated intensity into each current block.
    std::vector<std::vector<Rat>> sig(n, std::vector<Rat>(nblocks, Rat(0)));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) sig[x][block[y]] += k.kappa[x][y] * k.mu[y];

    std::vector<int> next(n, -1);
    int count = 0;
    for (int x = 0; x < n; ++x) {
      if (next[x] >= 0) continue;
      next[x] = count;
      for (int y = x + 1; y < n; ++y) {
        if (next[y] >= 0 || block[y] != block[x]) continue;
        bool same = true;
        for (int b = 0; b < nblocks && same; ++b)
          same = values_equal(sig[x][b], sig[y][b], k.exact, tol);
        if (same) next[y] = count;
      }
      ++count;
    }
    bool stable = (count == nblocks);
    block = std::move(next);
    nblocks = count;
    if (stable) break;
  }

  CanonicalCoarsening out;
  out.projection.to = block;
  out.projection.codomain = nblocks;
  out.kernel = quotient_kernel(k, out.projection, tol);
  return out;
}

std::optional<std::vector<int>> kernel_isomorphism(const FiniteKernel& a,
                                                   const FiniteKernel& b, double tol) {
  if (a.size() != b.size()) return std::nullopt;
  const int n = a.size();
  const bool exact = a.exact && b.exact;

  // Candidate lists pruned by type mass and the sorted row profile.
  auto profile = [&](const FiniteKernel& k, int x) {
    std::vector<std::pair<Rat, Rat>> row;
    for (int y = 0; y < k.size(); ++y) row.push_back({k.kappa[x][y], k.mu[y]});
    std::sort(row.begin(), row.end());
    return row;
  };
  std::vector<std::vector<int>> candidates(n);
  for (int i = 0; i < n; ++i) {
    auto pi = profile(a, i);
    for (int j = 0; j < n; ++j) {
      if (!values_equal(a.mu[i], b.mu[j], exact, tol)) continue;
      if (exact && pi != profile(b, j)) continue;
      candidates[i].push_back(j);
    }
    if (candidates[i].empty()) return std::nullopt;
  }

  std::vector<int> image(n, -1), used(n, 0);
  auto assign = [&](auto&& self, int i) -> bool {
    if (i == n) return true;
    for (int j : candidates[i]) {
      if (used[j]) continue;
      bool ok = true;
      for (int ip = 0; ip < i && ok; ++ip)
        ok = values_equal(a.kappa[i][ip], b.kappa[j][image[ip]], exact, tol);
      if (!ok) continue;
      if (!values_equal(a.kappa[i][i], b.kappa[j][j], exact, tol)) continue;
      image[i] = j;
      used[j] = 1;
      if (self(self, i + 1)) return true;
      image[i] = -1;
      used[j] = 0;
    }
    return false;
  };
  if (!assign(assign, 0)) return std::nullopt;
  return image;
}

bool pi_equal(const FiniteKernel& k1, const FiniteKernel& k2, double tol) {
  CanonicalCoarsening c1 = canonical_coarsening(k1, tol);
  CanonicalCoarsening c2 = canonical_coarsening(k2, tol);
  return kernel_isomorphism(c1.kernel, c2.kernel, tol).has_value();
}

}  // namespace sg
