#include "qhjqes/engine/matching.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qhjqes/error.hpp"

namespace qhjqes::engine {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kMatchTol = 1e-10;

struct LocalEquation {
  LaurentSeries weight;  // W in the local variable
  LaurentSeries linear;  // H
  LaurentSeries rhs;     // R0 + E*RE
  LaurentSeries rhs_energy;
};

/// Expansion of the Riccati coefficients about infinity. For the inversion
/// chart the point y = 0 already is infinity; otherwise q(s) = Q(1/s) and
/// dq/ds = -u^2 dQ/du.
LocalEquation local_equation(const RiccatiData& r, int kmax) {
  if (r.chart.kind == ChartKind::Inversion) {
    return {r.derivative_weight.expand_at(0.0, kmax + 2), r.linear_coefficient.expand_at(0.0, kmax + 2),
            r.rhs.expand_at(0.0, kmax) + r.rhs_energy.expand_at(0.0, kmax).scaled(r.energy),
            r.rhs_energy.expand_at(0.0, kmax)};
  }
  const auto w = r.derivative_weight.expand_at_infinity(kmax).shifted(2).scaled(-1.0);
  return {w, r.linear_coefficient.expand_at_infinity(kmax + 2),
          r.rhs.expand_at_infinity(kmax) + r.rhs_energy.expand_at_infinity(kmax).scaled(r.energy),
          r.rhs_energy.expand_at_infinity(kmax)};
}

double scale_of(const LaurentSeries& s) {
  double m = 0.0;
  for (int k = s.kmin(); k <= s.kmax(); ++k) m = std::max(m, std::abs(s[k]));
  return std::max(m, 1.0);
}

int leading_rhs_power(const LaurentSeries& rhs) {
  const int v = rhs.valuation(1e-13 * scale_of(rhs));
  if (v > rhs.kmax()) throw Error(ErrorKind::MatchingFailure, "matching failure: rhs vanishes identically");
  return v;
}

}  // namespace

double BranchCandidate::local_exponent() const {
  if (location.is_infinity()) {
    return (kI * measure_factor * leading_coefficient).real() / (order + 1);
  }
  return (kI * measure_factor * leading_coefficient).real();
}

BranchPair infinity_candidates(const RiccatiData& r) {
  const auto eq = local_equation(r, 4);
  const int v = leading_rhs_power(eq.rhs);
  if (v % 2 != 0) {
    throw Error(ErrorKind::MatchingFailure,
                "matching failure at power " + std::to_string(v) + ": odd rhs pole order");
  }
  const Complex root = std::sqrt(eq.rhs[v]);
  const int order = -v / 2;
  BranchCandidate plus{"+", root, order, BranchLocation::infinity(), r.chart.measure_factor, false};
  BranchCandidate minus{"-", -root, order, BranchLocation::infinity(), r.chart.measure_factor, false};
  return {plus, minus};
}

InfinityExpansion infinity_expansion(const RiccatiData& r, const BranchCandidate& branch, int depth) {
  if (!branch.location.is_infinity()) {
    throw Error(ErrorKind::InvalidInput, "infinity_expansion needs a branch at infinity");
  }
  // A shallow look is enough to learn the leading order.
  const int lead = leading_rhs_power(local_equation(r, 4).rhs);
  if (lead % 2 != 0) {
    throw Error(ErrorKind::MatchingFailure,
                "matching failure at power " + std::to_string(lead) + ": odd rhs pole order");
  }
  const int L = -lead / 2;
  const int pole_order = std::max(0, -lead);
  if (depth <= 0) depth = pole_order + 3;
  if (depth < pole_order + 2) {
    throw Error(ErrorKind::InsufficientDepth, "insufficient truncation depth: need depth >= " +
                                                  std::to_string(pole_order + 2));
  }
  const int kmin = -L;
  const int kmax = kmin + depth - 1;
  const int top_power = -2 * L + depth - 1;
  const auto eq = local_equation(r, top_power + 2 * L + 4);

  // Dominant balance q^2 ~ R: the derivative and linear terms must be weaker.
  const int wv = eq.weight.valuation(1e-14);
  const int hv = eq.linear.valuation(1e-14);
  if (wv <= 1 - L || hv <= -L) {
    throw Error(ErrorKind::MatchingFailure,
                "matching failure at power " + std::to_string(-2 * L) +
                    ": derivative or linear term competes with q^2 at leading order");
  }

  const Complex c0 = branch.leading_coefficient;
  const double scale = scale_of(eq.rhs.truncated(top_power));
  if (std::abs(c0 * c0 - eq.rhs[-2 * L]) > kMatchTol * scale) {
    throw Error(ErrorKind::MatchingFailure, "matching failure at power " + std::to_string(-2 * L) +
                                                ": branch does not square to the leading rhs term");
  }
  if (c0 == Complex{}) throw Error(ErrorKind::MatchingFailure, "matching failure: zero leading coefficient");

  LaurentSeries q(kmin, kmax);
  q.set(kmin, c0);
  for (int m = -2 * L + 1; m <= top_power; ++m) {
    const int target = m + L;
    Complex acc = eq.rhs[m];
    // q^2 terms not involving the new coefficient.
    for (int j = kmin + 1; j < target; ++j) acc -= q[j] * q[m - j];
    // W q': w_j * k c_k with j + k - 1 = m.
    for (int k = kmin; k < target; ++k) {
      const int j = m + 1 - k;
      if (j >= eq.weight.kmin()) acc -= eq.weight[j] * static_cast<double>(k) * q[k];
    }
    // H q: h_j c_k with j + k = m.
    for (int k = kmin; k < target; ++k) {
      const int j = m - k;
      if (j >= eq.linear.kmin()) acc -= eq.linear[j] * q[k];
    }
    q.set(target, acc / (2.0 * c0));
  }

  // Re-substitute and confirm every matched power.
  const auto residual = series::series_product(q, q) +
                        series::series_product(eq.weight, series::series_derivative(q)) +
                        series::series_product(eq.linear, q) - eq.rhs;
  const int check_top = std::min(residual.kmax(), top_power);
  for (int m = residual.kmin(); m <= check_top; ++m) {
    if (std::abs(residual[m]) > kMatchTol * scale) {
      throw Error(ErrorKind::MatchingFailure,
                  "matching failure at power " + std::to_string(m) + ": residual " +
                      std::to_string(std::abs(residual[m])));
    }
  }

  InfinityExpansion out{q, L, 0};
  out.energy_entry_power = eq.rhs_energy.valuation(1e-14);
  return out;
}

BranchPair fixed_pole_residues(const RiccatiData& r, Complex pole) {
  const int order = r.rhs.pole_order_at(pole);
  if (order != 2) {
    throw Error(ErrorKind::InvalidInput,
                "fixed_pole_residues: rhs pole order " + std::to_string(order) + " != 2");
  }
  if (r.linear_coefficient.pole_order_at(pole) > 1 || r.derivative_weight.pole_order_at(pole) > 0) {
    throw Error(ErrorKind::InvalidInput, "fixed_pole_residues: pole is not a regular singular point");
  }
  const Complex r_m2 = r.rhs.expand_at(pole, -2)[-2];
  const Complex h_m1 = r.linear_coefficient.expand_at(pole, -1)[-1];
  const Complex w0 = r.derivative_weight(pole);
  const Complex b = h_m1 - w0;
  const Complex disc = std::sqrt(b * b + 4.0 * r_m2);
  const Complex r1 = 0.5 * (-b + disc);
  const Complex r2 = 0.5 * (-b - disc);
  return {BranchCandidate{"+", r1, -1, BranchLocation::at(pole), r.chart.measure_factor, false},
          BranchCandidate{"-", r2, -1, BranchLocation::at(pole), r.chart.measure_factor, false}};
}

BranchCandidate select_physical_branch(const BranchPair& pair, const PotentialFamily& family,
                                       const BranchLocation& location) {
  BranchPair p = pair;
  const double m = chart_spec(family.native_chart()).measure_factor;
  for (auto& c : p) {
    c.measure_factor = m;
    c.location = location;
  }
  if (location.is_infinity()) {
    for (auto& c : p) c.decay_flag = c.local_exponent() < -1e-12;
    if (p[0].decay_flag == p[1].decay_flag) {
      throw Error(ErrorKind::BranchIndeterminate,
                  std::string("branch rule indeterminate at infinity: ") +
                      (p[0].decay_flag ? "both candidates decay" : "neither candidate decays"));
    }
    return p[0].decay_flag ? p[0] : p[1];
  }
  // psi ~ (s - s0)^mu with mu = i m r. The recessive solution has the larger
  // exponent; it is the physical one when it vanishes at the pole.
  for (auto& c : p) c.decay_flag = c.local_exponent() > 1e-12;
  const double e0 = p[0].local_exponent();
  const double e1 = p[1].local_exponent();
  if (std::abs(e0 - e1) < 1e-12) {
    throw Error(ErrorKind::BranchIndeterminate, "branch rule indeterminate: coincident exponents");
  }
  const auto& best = e0 > e1 ? p[0] : p[1];
  if (!best.decay_flag) {
    throw Error(ErrorKind::BranchIndeterminate,
                "branch rule indeterminate: neither candidate vanishes at the fixed pole");
  }
  return best;
}

}  // namespace qhjqes::engine
