#include "qhjqes/oracle/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qhjqes::oracle {

namespace {

std::pair<double, double> gershgorin(const Tridiagonal& t) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  const std::size_t n = t.diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(t.off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(t.off[i]) : 0.0);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  return {lo, hi};
}

double max_abs_change(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

Grid::Grid(double lo, double hi, int n) : x_min(lo), x_max(hi), N(n) {
  if (!(hi > lo)) throw Error(ErrorKind::InvalidInput, "grid requires x_max > x_min");
  if (n < 100) throw Error(ErrorKind::InvalidInput, "grid requires N >= 100");
}

Tridiagonal discretize(const RealPotential& v, const Grid& grid) {
  const double h = grid.h(), ih2 = 1.0 / (h * h);
  Tridiagonal t;
  t.diag.resize(grid.N);
  t.off.assign(grid.N - 1, -ih2);
  for (int i = 0; i < grid.N; ++i) {
    const double x = grid.node(i);
    const double vx = v(x);
    if (!std::isfinite(vx)) {
      std::ostringstream os;
      os << "potential is not finite at grid node x = " << x;
      throw Error(ErrorKind::InvalidInput, os.str());
    }
    t.diag[i] = 2.0 * ih2 + vx;
  }
  return t;
}

Tridiagonal discretize(const PotentialFamily& family, const Grid& grid) {
  return discretize([&](double x) { return family.potential(x); }, grid);
}

int sturm_count(const Tridiagonal& t, double lambda) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    const double e2 = i > 0 ? t.off[i - 1] * t.off[i - 1] : 0.0;
    q = t.diag[i] - lambda - (i > 0 ? e2 / q : 0.0);
    if (q == 0.0) q = -std::numeric_limits<double>::epsilon() * (std::abs(lambda) + 1.0);
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> low_spectrum(const Tridiagonal& t, int k) {
  const int n = static_cast<int>(t.diag.size());
  if (k < 1 || k > n) throw Error(ErrorKind::InvalidInput, "low_spectrum: k out of range");
  const auto [glo, ghi] = gershgorin(t);
  std::vector<double> out(k);
  double lo_floor = glo;
  for (int j = 0; j < k; ++j) {
    // Smallest lambda with sturm_count(lambda) > j.
    double lo = lo_floor, hi = ghi;
    for (int it = 0; it < 400; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (hi - lo <= 4 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi))) break;
      (sturm_count(t, mid) > j ? hi : lo) = mid;
    }
    out[j] = 0.5 * (lo + hi);
    lo_floor = lo;
  }
  return out;
}

Domain Domain::extended() const {
  Domain d = *this;
  switch (extension) {
    case Extension::Symmetric: {
      const double c = 0.5 * (x_min + x_max), w = x_max - x_min;
      d.x_min = c - w, d.x_max = c + w;
      break;
    }
    case Extension::RightEnd:
      d.x_min = lo_singular + 0.5 * (x_min - lo_singular);
      d.x_max = x_min + 2.0 * (x_max - x_min);
      break;
    case Extension::Shrink:
      d.x_min = lo_singular + 0.5 * (x_min - lo_singular);
      d.x_max = hi_singular - 0.5 * (hi_singular - x_max);
      break;
  }
  return d;
}

Domain default_domain(const PotentialFamily& family) {
  switch (family.kind()) {
    case engine::FamilyKind::Sextic: return {-6.0, 6.0, Extension::Symmetric};
    case engine::FamilyKind::RadialSextic:
    // Ends on the singular points themselves: nodes stay interior and
    // psi(end) = 0 is the regular boundary condition there.
    case engine::FamilyKind::Hyperbolic: return {0.0, 6.0, Extension::RightEnd};
    case engine::FamilyKind::Circular:
      return {0.0, std::numbers::pi / 2, Extension::Shrink, 0.0, std::numbers::pi / 2};
  }
  return {-6.0, 6.0};
}

OracleSpectrum refine(const RealPotential& v, const Domain& domain, int k, double tol, const RefineOptions& opt) {
  if (!(tol >= 1e-8)) throw Error(ErrorKind::InvalidInput, "refine requires tol >= 1e-8");
  OracleSpectrum s;
  s.domain = domain;
  int N = opt.n_start;
  Grid grid(domain.x_min, domain.x_max, N);
  std::vector<double> prev = low_spectrum(discretize(v, grid), k);
  std::vector<double> coarse;
  double change = std::numeric_limits<double>::infinity();
  while (true) {
    const int next = 2 * N + 1;  // keeps the old nodes
    if (next > opt.n_max) {
      s.energies = prev;
      s.error_estimates.assign(k, change);
      s.grid = grid;
      std::ostringstream os;
      os << "oracle did not converge to " << tol << " by N = " << N << " (last change " << change << ")";
      throw NonConvergenceError(os.str(), s);
    }
    N = next;
    grid = Grid(domain.x_min, domain.x_max, N);
    coarse = std::move(prev);
    prev = low_spectrum(discretize(v, grid), k);
    change = max_abs_change(prev, coarse);
    if (change < tol) break;
  }
  s.energies = prev;
  s.grid = grid;
  s.error_estimates.resize(k);
  for (int i = 0; i < k; ++i) s.error_estimates[i] = std::max(std::abs(coarse[i] - s.energies[i]), 1e-15);

  // Same spacing on the enlarged domain.
  const Domain big = domain.extended();
  const int Nbig = static_cast<int>(std::lround((big.x_max - big.x_min) / grid.h())) - 1;
  const auto ext = low_spectrum(discretize(v, Grid(big.x_min, big.x_max, Nbig)), k);
  s.domain_change = max_abs_change(ext, s.energies);
  if (s.domain_change >= tol) {
    std::ostringstream os;
    os << "oracle domain truncation error " << s.domain_change << " exceeds " << tol;
    throw NonConvergenceError(os.str(), s);
  }
  for (int i = 0; i < k; ++i) s.error_estimates[i] += 2.0 * std::abs(ext[i] - s.energies[i]);
  return s;
}

OracleSpectrum refine(const PotentialFamily& family, const Domain& domain, int k, double tol,
                      const RefineOptions& opt) {
  return refine([&](double x) { return family.potential(x); }, domain, k, tol, opt);
}

OracleSpectrum refine(const PotentialFamily& family, int k, double tol, const RefineOptions& opt) {
  return refine(family, default_domain(family), k, tol, opt);
}

}  // namespace qhjqes::oracle
