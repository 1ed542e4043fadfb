#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qhjqes/series/polynomial.hpp"

namespace qhjqes::engine {

using series::Complex;

/// V(x) = alpha x^2 + beta x^4 + gamma x^6, gamma > 0.
struct Sextic {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 1.0;
};

/// Sextic oscillator with a centrifugal barrier on x > 0:
/// V = g/x^2 + c2 x^2 + 2ab x^4 + a^2 x^6.
struct RadialSextic {
  double S = 1.0;
  double a = 1.0;
  double b = 0.0;
  int M = 0;

  double g() const { return 4.0 * (S - 0.25) * (S - 0.75); }
  double c2() const { return b * b - 4.0 * a * (S + 0.5 + M); }
};

/// Trigonometric family on (0, pi/2):
/// V = A/sin^2 x + B/cos^2 x + C sin^2 x - D sin^4 x.
struct Circular {
  double S1 = 1.0;
  double S2 = 1.0;
  double q1 = 1.0;
  int M = 0;

  double A() const { return 4.0 * (S1 - 0.25) * (S1 - 0.75); }
  double B() const { return 4.0 * (S2 - 0.25) * (S2 - 0.75); }
  double C() const { return q1 * q1 + 4.0 * q1 * (S1 + S2 + M); }
  double D() const { return q1 * q1; }
};

/// Hyperbolic family on x > 0:
/// V = -A/cosh^2 x + B/sinh^2 x - C cosh^2 x + D cosh^4 x.
struct Hyperbolic {
  double S1 = 1.0;
  double S2 = 1.0;
  double q1 = 1.0;
  int M = 0;

  double A() const { return 4.0 * (S1 - 0.25) * (S1 - 0.75); }
  double B() const { return 4.0 * (S2 - 0.25) * (S2 - 0.75); }
  double C() const { return q1 * q1 + 4.0 * q1 * (S1 + S2 + M); }
  double D() const { return q1 * q1; }
};

enum class FamilyKind { Sextic, RadialSextic, Circular, Hyperbolic };

/// Coordinate in which a family's Riccati equation is written.
///   Identity:  x itself.
///   Inversion: y = 1/x, momentum unchanged.
///   Trig:      t = sin^2 x, momentum p = sqrt(t(1-t)) q, p dx = q/2 dt.
///   Hyper:     t = cosh x, momentum p = sqrt(t^2-1) q,  p dx = q dt.
enum class ChartKind { Identity, Inversion, Trig, Hyper };

struct ChartSpec {
  ChartKind kind;
  /// The quantization integrand in the chart is measure_factor * q d(chart).
  double measure_factor;
  const char* name;
  const char* momentum_reduction;
};

ChartSpec chart_spec(ChartKind kind);

/// Open interval of the chart variable that the physical x-range maps onto.
struct PhysicalInterval {
  double lo;
  double hi;
};

/// Tagged parameter record for the four families. Construction validates the
/// family's parameter ranges (hbar = 2m = 1 throughout).
class PotentialFamily {
 public:
  using Params = std::variant<Sextic, RadialSextic, Circular, Hyperbolic>;

  explicit PotentialFamily(Params params);
  // NOLINTBEGIN(google-explicit-constructor)
  PotentialFamily(const Sextic& p) : PotentialFamily(Params(p)) {}
  PotentialFamily(const RadialSextic& p) : PotentialFamily(Params(p)) {}
  PotentialFamily(const Circular& p) : PotentialFamily(Params(p)) {}
  PotentialFamily(const Hyperbolic& p) : PotentialFamily(Params(p)) {}
  // NOLINTEND(google-explicit-constructor)

  FamilyKind kind() const noexcept { return static_cast<FamilyKind>(params_.index()); }
  const Params& params() const noexcept { return params_; }
  template <class T>
  const T& as() const {
    return std::get<T>(params_);
  }
  std::string name() const;

  /// V(x) continued to complex x.
  Complex potential(Complex x) const;
  double potential(double x) const { return potential(Complex(x)).real(); }

  /// Chart in which moving poles are counted and algebraic states are built.
  ChartKind native_chart() const;
  /// Finite fixed singular points of the Riccati equation in the native chart.
  std::vector<double> fixed_poles() const;
  PhysicalInterval physical_interval() const;
  /// Moving poles in the native chart per unit of the QES parameter n
  /// (2 where a mirror image of each physical pole is also present).
  int moving_multiplicity() const;

  /// Chart variable as a function of x, and its x-derivative.
  Complex chart_coordinate(Complex x) const;
  Complex chart_jacobian(Complex x) const;
  Complex chart_second_derivative(Complex x) const;

 private:
  Params params_;
};

std::string to_string(FamilyKind kind);

}  // namespace qhjqes::engine
