#pragma once

#include <vector>

#include "qhjqes/engine/family.hpp"
#include "qhjqes/series/laurent_series.hpp"

namespace qhjqes::engine {

using series::LaurentSeries;
using series::Polynomial;

/// num(s) / den(s) with polynomial numerator and denominator.
struct RationalFunction {
  Polynomial num = Polynomial::constant(0.0);
  Polynomial den = Polynomial::constant(1.0);

  static RationalFunction constant(Complex c) { return {Polynomial::constant(c), Polynomial::constant(1.0)}; }

  Complex operator()(Complex s) const { return num(s) / den(s); }

  /// Laurent expansion in u = s - s0, known through u^kmax.
  LaurentSeries expand_at(Complex s0, int kmax) const;
  /// Laurent expansion in u = 1/s about s = infinity, known through u^kmax.
  LaurentSeries expand_at_infinity(int kmax) const;
  /// Order of the pole at s0 (0 when regular, negative for a zero).
  int pole_order_at(Complex s0) const;
};

/// Riccati equation for the chart momentum q(s):
///
///   q^2 + W(s) q' + H(s) q = R0(s) + E * RE(s)
///
/// Identity chart: W = -i, H = 0, q = p.
/// Inversion chart: W = i y^2, H = 0, q = p(1/y).
/// Trig chart: W = -2i, H = -i(1-2t)/(t(1-t)), obtained by substituting
///   p = sqrt(t(1-t)) q into the t = sin^2 x form of p^2 - i p' = E - V.
/// Hyper chart: W = -i, H = -i t/(t^2-1).
struct RiccatiData {
  ChartSpec chart;
  RationalFunction rhs;          // R0, the E-independent part
  RationalFunction rhs_energy;   // RE, multiplies E
  RationalFunction derivative_weight;
  RationalFunction linear_coefficient;
  /// E enters only through rhs_energy, linearly.
  bool energy_symbolic = true;
  double energy = 0.0;
  /// Poles of the rhs in the finite chart plane.
  std::vector<Complex> fixed_poles;

  /// Full right-hand side at the stored energy.
  Complex rhs_value(Complex s) const { return rhs(s) + energy * rhs_energy(s); }
};

/// Builds the Riccati data of `family` in `chart`. Sextic and RadialSextic
/// accept Identity or Inversion, Circular only Trig, Hyperbolic only Hyper.
RiccatiData riccati_in_chart(const PotentialFamily& family, ChartKind chart, double energy = 0.0);

}  // namespace qhjqes::engine
