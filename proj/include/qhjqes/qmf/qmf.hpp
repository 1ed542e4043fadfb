#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qhjqes/series/contour.hpp"
#include "qhjqes/spectra/spectra.hpp"

namespace qhjqes::qmf {

using series::Complex;
using spectra::AlgebraicState;

/// p = -i psi'/psi of an algebraic state, built from the closed form.
///
/// chart(s) is -i d(log psi)/ds in the family's chart variable, so that
/// chart(s) ds = p dx; contours are taken in s. For the sextic s = x.
class QmfEvaluator {
 public:
  explicit QmfEvaluator(AlgebraicState state);

  const AlgebraicState& state() const noexcept { return state_; }
  /// Moving-zero polynomial C(s).
  const series::Polynomial& census() const noexcept { return census_; }

  Complex chart(Complex s) const;
  Complex operator()(Complex x) const;

 private:
  AlgebraicState state_;
  series::Polynomial census_;
  series::Polynomial dcensus_;
  series::Polynomial dgauge_;
};

QmfEvaluator qmf(const AlgebraicState& state);

enum class PoleKind { Fixed, Moving };
enum class Axis { Real, Complex };

const char* to_string(PoleKind k);
const char* to_string(Axis a);

struct PoleReport {
  Complex location;  // chart variable
  int multiplicity = 1;
  Complex measured_residue;
  Complex expected_residue;
  PoleKind kind = PoleKind::Moving;
  Axis axis = Axis::Complex;
};

struct CensusReport {
  int n_real = 0;
  int n_complex = 0;
  int total = 0;
  double quantization_value = 0.0;
  double global_count = 0.0;
  /// Argument-principle route; agrees with global_count.
  double argument_count = 0.0;
  std::vector<PoleReport> moving;
  std::vector<PoleReport> fixed;
  std::vector<std::string> warnings;
};

struct QmfOptions {
  int n_points = series::kDefaultQuadraturePoints;
  /// Zeros this close to the real axis (relative) count as real.
  double real_threshold = 1e-9;
  double min_half_height = 1e-6;
};

/// Zero locations and classification, plus measured residues and both counts.
CensusReport zero_census(const AlgebraicState& state, const QmfOptions& opt = {});

/// (1/2 pi i) of the integral of p around a small circle about z0 (chart variable).
Complex residue_at_zero(const QmfEvaluator& e, Complex z0, const QmfOptions& opt = {});

/// (1/2 pi) of the integral of p over a stadium enclosing exactly the zeros on
/// the physical real interval.
double quantization_check(const QmfEvaluator& e, const QmfOptions& opt = {});

struct GlobalCount {
  double ledger_route;    // (1/2pi) oint p ds minus the fixed-pole share
  double argument_route;  // (1/2pi i) oint C'/C ds
  double radius;
};

GlobalCount global_pole_count(const QmfEvaluator& e, const QmfOptions& opt = {});

struct InfinityOrder {
  double exponent;
  Complex coefficient;
  double fit_residual;
};

/// Least-squares fit of log|p| against log|z| on the diagonal rays, |z| in [10, 100].
InfinityOrder infinity_order_check(const QmfEvaluator& e);

}  // namespace qhjqes::qmf
