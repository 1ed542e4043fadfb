#include "qhjqes/qmf/qmf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qhjqes/error.hpp"
#include "qhjqes/series/roots.hpp"

namespace qhjqes::qmf {

using engine::FamilyKind;
using series::CircleContour;
using series::StadiumContour;

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

struct Singularity {
  Complex location;
  bool moving;
};

bool in_interval(const engine::PhysicalInterval& iv, double v) { return v > iv.lo && v < iv.hi; }

std::vector<series::Root> zeros_of(const series::Polynomial& c) {
  if (c.degree() < 1) return {};
  return series::poly_roots(c);
}

std::vector<Singularity> singularities(const QmfEvaluator& e, const std::vector<series::Root>& zeros) {
  std::vector<Singularity> out;
  for (const auto& z : zeros) out.push_back({z.value, true});
  for (const auto& p : e.state().gauge.prefactors)
    if (p.exponent != 0.0) out.push_back({Complex(p.location), false});
  return out;
}

// Points of a real zero that lie on the physical real segment.
bool is_physical_real(const QmfEvaluator& e, Complex z, double thr) {
  return std::abs(z.imag()) < thr * (1.0 + std::abs(z)) &&
         in_interval(e.state().family.physical_interval(), z.real());
}

double distance_to_segment(Complex z, double a, double b) {
  const double x = std::clamp(z.real(), a, b);
  return std::abs(z - Complex(x, 0.0));
}

}  // namespace

const char* to_string(PoleKind k) { return k == PoleKind::Fixed ? "fixed" : "moving"; }
const char* to_string(Axis a) { return a == Axis::Real ? "real" : "complex"; }

QmfEvaluator::QmfEvaluator(AlgebraicState state)
    : state_(std::move(state)),
      census_(state_.census_polynomial()),
      dcensus_(census_.derivative()),
      dgauge_(state_.gauge.gauge_polynomial.derivative()) {}

Complex QmfEvaluator::chart(Complex s) const {
  return -kI * (state_.gauge.prefactor_log_derivative(s) + dcensus_(s) / census_(s) - dgauge_(s));
}

Complex QmfEvaluator::operator()(Complex x) const {
  const auto& f = state_.family;
  return chart(f.chart_coordinate(x)) * f.chart_jacobian(x);
}

QmfEvaluator qmf(const AlgebraicState& state) { return QmfEvaluator(state); }

Complex residue_at_zero(const QmfEvaluator& e, Complex z0, const QmfOptions& opt) {
  const auto sing = singularities(e, zeros_of(e.census()));
  double d = std::numeric_limits<double>::infinity();
  for (const auto& s : sing)
    if (std::abs(s.location - z0) > 1e-12 * (1.0 + std::abs(z0))) d = std::min(d, std::abs(s.location - z0));
  const double r = std::min(0.1, 0.5 * d);
  const auto f = [&](Complex s) { return e.chart(s); };
  return series::contour_integral(f, CircleContour{z0, r}, opt.n_points) / (2.0 * kPi * kI);
}

double quantization_check(const QmfEvaluator& e, const QmfOptions& opt) {
  const auto zeros = zeros_of(e.census());
  double a = std::numeric_limits<double>::infinity(), b = -a;
  for (const auto& z : zeros) {
    if (!is_physical_real(e, z.value, opt.real_threshold)) continue;
    a = std::min(a, z.value.real());
    b = std::max(b, z.value.real());
  }
  if (!(a <= b)) return 0.0;  // nothing to enclose

  double gap = std::numeric_limits<double>::infinity();
  for (const auto& s : singularities(e, zeros)) {
    if (s.moving && is_physical_real(e, s.location, opt.real_threshold)) continue;
    gap = std::min(gap, distance_to_segment(s.location, a, b));
  }
  const double h = std::min(0.5 * gap, 1.0);
  if (h < opt.min_half_height) {
    std::ostringstream os;
    os << "no separating contour: an excluded singularity lies within " << gap << " of the real zeros";
    throw Error(ErrorKind::NoSeparatingContour, os.str());
  }
  const auto f = [&](Complex s) { return e.chart(s); };
  const Complex v = series::contour_integral(f, StadiumContour{Complex(a), Complex(b), h}) / (2.0 * kPi);
  return v.real();
}

GlobalCount global_pole_count(const QmfEvaluator& e, const QmfOptions& opt) {
  const auto zeros = zeros_of(e.census());
  double zmax = 0.0;
  for (const auto& z : zeros) zmax = std::max(zmax, std::abs(z.value));
  for (const auto& p : e.state().gauge.prefactors) zmax = std::max(zmax, std::abs(p.location));
  const double R = 2.0 * (1.0 + zmax);

  const auto f = [&](Complex s) { return e.chart(s); };
  const Complex total = series::contour_integral(f, CircleContour{0.0, R}, opt.n_points) / (2.0 * kPi);
  // Each fixed pole contributes i * (-i kappa) = kappa; the gauge polynomial integrates to zero.
  double fixed_share = 0.0;
  for (const auto& p : e.state().gauge.prefactors) fixed_share += p.exponent;

  const auto& C = e.census();
  const auto dC = C.derivative();
  const auto g = [&](Complex s) { return dC(s) / C(s); };
  const Complex arg = series::contour_integral(g, CircleContour{0.0, R}, opt.n_points) / (2.0 * kPi * kI);
  return {total.real() - fixed_share, arg.real(), R};
}

CensusReport zero_census(const AlgebraicState& state, const QmfOptions& opt) {
  const QmfEvaluator e(state);
  CensusReport rep;
  const auto zeros = zeros_of(e.census());
  for (const auto& z : zeros) {
    if (z.multiplicity > 1) {
      std::ostringstream os;
      os << "degenerate zero of multiplicity " << z.multiplicity << " at " << z.value;
      throw Error(ErrorKind::DegenerateZero, os.str());
    }
  }
  for (const auto& z : zeros) {
    PoleReport p;
    p.location = z.value;
    p.multiplicity = z.multiplicity;
    p.kind = PoleKind::Moving;
    p.expected_residue = -kI;
    p.axis = is_physical_real(e, z.value, opt.real_threshold) ? Axis::Real : Axis::Complex;
    const double rel = std::abs(z.value.imag()) / (1.0 + std::abs(z.value));
    if (rel >= opt.real_threshold && rel < 1e-6) {
      std::ostringstream os;
      os << "zero at " << z.value << " is near the real-axis threshold";
      rep.warnings.push_back(os.str());
    }
    p.measured_residue = residue_at_zero(e, z.value, opt);
    (p.axis == Axis::Real ? rep.n_real : rep.n_complex) += 1;
    rep.moving.push_back(p);
  }
  for (const auto& pf : state.gauge.prefactors) {
    if (pf.exponent == 0.0) continue;
    PoleReport p;
    p.location = pf.location;
    p.kind = PoleKind::Fixed;
    p.axis = Axis::Real;
    p.expected_residue = -kI * pf.exponent;
    p.measured_residue = residue_at_zero(e, Complex(pf.location), opt);
    rep.fixed.push_back(p);
  }
  rep.total = rep.n_real + rep.n_complex;
  rep.quantization_value = quantization_check(e, opt);
  const auto g = global_pole_count(e, opt);
  rep.global_count = g.ledger_route;
  rep.argument_count = g.argument_route;
  return rep;
}

InfinityOrder infinity_order_check(const QmfEvaluator& e) {
  const auto kind = e.state().family.kind();
  if (kind != FamilyKind::Sextic && kind != FamilyKind::RadialSextic)
    throw Error(ErrorKind::InvalidInput, "infinity_order_check applies to sextic-type families");

  std::vector<double> lx, ly;
  for (const double theta : {0.25 * kPi, 0.75 * kPi, 1.25 * kPi, 1.75 * kPi}) {
    for (int i = 0; i <= 20; ++i) {
      const double r = std::pow(10.0, 1.0 + i / 20.0);
      const Complex z = std::polar(r, theta);
      lx.push_back(std::log(r));
      ly.push_back(std::log(std::abs(e.chart(z))));
    }
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i] / n, my += ly[i] / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) sxy += (lx[i] - mx) * (ly[i] - my), sxx += (lx[i] - mx) * (lx[i] - mx);
  const double slope = sxy / sxx, icept = my - slope * mx;
  double rss = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) rss += std::pow(ly[i] - (icept + slope * lx[i]), 2);
  const double resid = std::sqrt(rss / n);

  InfinityOrder out{slope, 0.0, resid};
  const Complex z = std::polar(100.0, 0.25 * kPi);
  out.coefficient = e.chart(z) / (z * z * z);
  if (resid > 1e-2) {
    std::ostringstream os;
    os << "unexpected growth: log|p| is not linear in log|z| (rms residual " << resid << ")";
    throw Error(ErrorKind::UnexpectedGrowth, os.str());
  }
  return out;
}

}  // namespace qhjqes::qmf
