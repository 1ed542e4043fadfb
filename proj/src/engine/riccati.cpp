#include "qhjqes/engine/riccati.hpp"

#include <algorithm>
#include <cmath>

#include "qhjqes/error.hpp"

namespace qhjqes::engine {

namespace {

constexpr Complex kI{0.0, 1.0};

int exact_valuation(const Polynomial& p) {
  const double tol = 1e-13 * p.norm_inf();
  for (int k = 0; k <= p.degree(); ++k) {
    if (std::abs(p[k]) > tol) return k;
  }
  return p.degree() + 1;
}

/// Power series of p / u^v with `terms` coefficients, where v = valuation.
LaurentSeries stripped(const Polynomial& p, int v, int terms) {
  LaurentSeries s(0, terms - 1);
  for (int k = 0; k < terms; ++k) s.set(k, p[k + v]);
  return s;
}

LaurentSeries expand_ratio(const Polynomial& num, const Polynomial& den, int offset, int kmax) {
  if (den.is_zero()) throw Error(ErrorKind::InvalidInput, "rational function with zero denominator");
  if (num.is_zero()) return LaurentSeries(std::min(offset, kmax), kmax);
  const int vn = exact_valuation(num);
  const int vd = exact_valuation(den);
  const int kmin = offset + vn - vd;
  if (kmax < kmin) return LaurentSeries(kmax, kmax);
  const int terms = kmax - kmin + 1;
  const auto q = series::series_quotient(stripped(num, vn, terms), stripped(den, vd, terms));
  return q.shifted(kmin).truncated(kmax);
}

Polynomial poly(std::initializer_list<double> c) {
  std::vector<Complex> v(c.begin(), c.end());
  return Polynomial(std::move(v));
}

}  // namespace

LaurentSeries RationalFunction::expand_at(Complex s0, int kmax) const {
  return expand_ratio(num.shifted(s0), den.shifted(s0), 0, kmax);
}

LaurentSeries RationalFunction::expand_at_infinity(int kmax) const {
  // num(1/u)/den(1/u) = u^(deg den - deg num) * rev(num)(u) / rev(den)(u)
  return expand_ratio(num.reversed(), den.reversed(), den.degree() - num.degree(), kmax);
}

int RationalFunction::pole_order_at(Complex s0) const {
  if (num.is_zero()) return 0;
  return exact_valuation(den.shifted(s0)) - exact_valuation(num.shifted(s0));
}

RiccatiData riccati_in_chart(const PotentialFamily& family, ChartKind chart, double energy) {
  RiccatiData r;
  r.chart = chart_spec(chart);
  r.energy = energy;

  const auto incompatible = [&] {
    return Error(ErrorKind::InvalidInput, "chart " + std::string(r.chart.name) +
                                              " is not compatible with family " + family.name());
  };

  switch (family.kind()) {
    case FamilyKind::Sextic:
    case FamilyKind::RadialSextic: {
      // Even polynomial part alpha x^2 + beta x^4 + gamma x^6 plus g/x^2.
      double alpha, beta, gamma, g = 0.0;
      if (family.kind() == FamilyKind::Sextic) {
        const auto& s = family.as<Sextic>();
        alpha = s.alpha;
        beta = s.beta;
        gamma = s.gamma;
      } else {
        const auto& rs = family.as<RadialSextic>();
        alpha = rs.c2();
        beta = 2.0 * rs.a * rs.b;
        gamma = rs.a * rs.a;
        g = rs.g();
      }
      if (chart == ChartKind::Identity) {
        // -V = -(g + alpha x^4 + beta x^6 + gamma x^8) / x^2
        r.rhs = {poly({-g, 0, 0, 0, -alpha, 0, -beta, 0, -gamma}), poly({0, 0, 1})};
        r.derivative_weight = RationalFunction::constant(-kI);
        if (g != 0.0) r.fixed_poles = {0.0};
      } else if (chart == ChartKind::Inversion) {
        // -V(1/y) = -(gamma + beta y^2 + alpha y^4 + g y^8) / y^6
        r.rhs = {poly({-gamma, 0, -beta, 0, -alpha, 0, 0, 0, -g}), Polynomial::monomial(6)};
        r.derivative_weight = {Polynomial::monomial(2, kI), Polynomial::constant(1.0)};
        r.fixed_poles = {0.0};
      } else {
        throw incompatible();
      }
      r.rhs_energy = RationalFunction::constant(1.0);
      r.linear_coefficient = RationalFunction::constant(0.0);
      break;
    }
    case FamilyKind::Circular: {
      if (chart != ChartKind::Trig) throw incompatible();
      const auto& c = family.as<Circular>();
      const double A = c.A(), B = c.B(), C = c.C(), D = c.D();
      const Polynomial t_1mt = poly({0, 1, -1});  // t(1-t)
      // V(t) t(1-t) = A(1-t) + B t + C t^2(1-t) - D t^3(1-t)
      const Polynomial v_num = poly({A, B - A, C, -C - D, D});
      r.rhs = {(-1.0) * v_num, t_1mt * t_1mt};
      r.rhs_energy = {Polynomial::constant(1.0), t_1mt};
      r.derivative_weight = RationalFunction::constant(-2.0 * kI);
      r.linear_coefficient = {(-kI) * poly({1, -2}), t_1mt};
      r.fixed_poles = {0.0, 1.0};
      break;
    }
    case FamilyKind::Hyperbolic: {
      if (chart != ChartKind::Hyper) throw incompatible();
      const auto& h = family.as<Hyperbolic>();
      const double A = h.A(), B = h.B(), C = h.C(), D = h.D();
      const Polynomial tt_1 = poly({-1, 0, 1});  // t^2 - 1
      // V(t) t^2 (t^2-1) = -A(t^2-1) + B t^2 - C t^4 (t^2-1) + D t^6 (t^2-1)
      const Polynomial v_num = poly({A, 0, B - A, 0, C, 0, -C - D, 0, D});
      r.rhs = {(-1.0) * v_num, Polynomial::monomial(2) * tt_1 * tt_1};
      r.rhs_energy = {Polynomial::constant(1.0), tt_1};
      r.derivative_weight = RationalFunction::constant(-kI);
      r.linear_coefficient = {Polynomial::monomial(1, -kI), tt_1};
      r.fixed_poles = {-1.0, 0.0, 1.0};
      break;
    }
  }
  return r;
}

}  // namespace qhjqes::engine
