#pragma once

#include <functional>
#include <vector>

#include "qhjqes/engine/family.hpp"
#include "qhjqes/error.hpp"

namespace qhjqes::oracle {

using engine::PotentialFamily;

/// Dirichlet grid of N interior points on (x_min, x_max).
struct Grid {
  double x_min;
  double x_max;
  int N;

  Grid(double x_min, double x_max, int N);
  double h() const { return (x_max - x_min) / (N + 1); }
  double node(int i) const { return x_min + (i + 1) * h(); }
};

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // size N-1
};

using RealPotential = std::function<double(double)>;

/// -d^2/dx^2 + V by central differences: diagonal 2/h^2 + V, off-diagonal -1/h^2.
Tridiagonal discretize(const RealPotential& v, const Grid& grid);
Tridiagonal discretize(const PotentialFamily& family, const Grid& grid);

/// Number of eigenvalues strictly below lambda (Sturm count of the LDL^T pivots).
int sturm_count(const Tridiagonal& t, double lambda);

/// The k smallest eigenvalues by bisection, ascending.
std::vector<double> low_spectrum(const Tridiagonal& t, int k);

/// How the domain is enlarged to test truncation error.
enum class Extension {
  Symmetric,  // half-width doubled about the centre
  RightEnd,   // singular left end: distance to it halved, width doubled
  Shrink,     // singular at both ends: distance to each end halved
};

struct Domain {
  double x_min;
  double x_max;
  Extension extension = Extension::Symmetric;
  /// Singular end points; an end may sit on one (nodes are interior), in
  /// which case the extension leaves it there.
  double lo_singular = 0.0;
  double hi_singular = 0.0;

  Domain extended() const;
};

Domain default_domain(const PotentialFamily& family);

struct OracleSpectrum {
  std::vector<double> energies;
  std::vector<double> error_estimates;
  Grid grid{0.0, 1.0, 100};
  Domain domain{0.0, 1.0};
  /// Largest eigenvalue change when the domain was extended. Error estimates
  /// carry twice this (exact for cut-off error decaying at least linearly).
  double domain_change = 0.0;
};

struct RefineOptions {
  int n_start = 511;  // 2N+1 doubling reaches 65535
  int n_max = 1 << 16;
};

/// Grid doubling until successive changes are below tol, then one domain extension.
OracleSpectrum refine(const RealPotential& v, const Domain& domain, int k, double tol, const RefineOptions& = {});
OracleSpectrum refine(const PotentialFamily& family, const Domain& domain, int k, double tol,
                      const RefineOptions& = {});
OracleSpectrum refine(const PotentialFamily& family, int k, double tol, const RefineOptions& = {});

/// Raised when refinement stalls; carries the best estimates so far.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, OracleSpectrum best)
      : Error(ErrorKind::NonConvergence, what), best_(std::move(best)) {}
  const OracleSpectrum& best() const noexcept { return best_; }

 private:
  OracleSpectrum best_;
};

}  // namespace qhjqes::oracle
