#include "qhjqes/engine/family.hpp"

#include <cmath>
#include <limits>

#include "qhjqes/error.hpp"

namespace qhjqes::engine {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvalidInput, what);
}

bool finite(double v) { return std::isfinite(v); }

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

ChartSpec chart_spec(ChartKind kind) {
  switch (kind) {
    case ChartKind::Identity: return {kind, 1.0, "identity", "none"};
    case ChartKind::Inversion: return {kind, 1.0, "inversion y=1/x", "none"};
    case ChartKind::Trig: return {kind, 0.5, "trig t=sin^2 x", "p = sqrt(t(1-t)) q"};
    case ChartKind::Hyper: return {kind, 1.0, "hyper t=cosh x", "p = sqrt(t^2-1) q"};
  }
  throw Error(ErrorKind::InvalidInput, "unknown chart");
}

PotentialFamily::PotentialFamily(Params params) : params_(params) {
  std::visit(
      Overloaded{
          [](const Sextic& s) {
            require(finite(s.alpha) && finite(s.beta) && finite(s.gamma),
                    "sextic parameters must be finite");
            require(s.gamma > 0.0, "sextic requires gamma > 0");
          },
          [](const RadialSextic& r) {
            require(finite(r.S) && finite(r.a) && finite(r.b), "radial parameters must be finite");
            require(4.0 * r.S > 3.0, "radial sextic requires 4S > 3");
            require(r.a > 0.0, "radial sextic requires a > 0");
            require(r.M >= 0, "radial sextic requires M >= 0");
          },
          [](const Circular& c) {
            require(finite(c.S1) && finite(c.S2) && finite(c.q1),
                    "circular parameters must be finite");
            require(2.0 * c.S1 > 1.0 && 2.0 * c.S2 > 1.0, "circular requires 2S1 > 1 and 2S2 > 1");
            require(c.q1 > 0.0, "circular requires q1 > 0");
            require(c.M >= 0, "circular requires M >= 0");
          },
          [](const Hyperbolic& h) {
            require(finite(h.S1) && finite(h.S2) && finite(h.q1),
                    "hyperbolic parameters must be finite");
            require(2.0 * h.S1 > 1.0 && 2.0 * h.S2 > 1.0,
                    "hyperbolic requires 2S1 > 1 and 2S2 > 1");
            require(h.q1 > 0.0, "hyperbolic requires q1 > 0");
            require(h.M >= 0, "hyperbolic requires M >= 0");
          },
      },
      params_);
}

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Sextic: return "sextic";
    case FamilyKind::RadialSextic: return "radial_sextic";
    case FamilyKind::Circular: return "circular";
    case FamilyKind::Hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

std::string PotentialFamily::name() const { return to_string(kind()); }

Complex PotentialFamily::potential(Complex x) const {
  return std::visit(
      Overloaded{
          [&](const Sextic& s) {
            const Complex x2 = x * x;
            return x2 * (s.alpha + x2 * (s.beta + x2 * s.gamma));
          },
          [&](const RadialSextic& r) {
            const Complex x2 = x * x;
            return r.g() / x2 + x2 * (r.c2() + x2 * (2.0 * r.a * r.b + x2 * r.a * r.a));
          },
          [&](const Circular& c) {
            const Complex s2 = std::sin(x) * std::sin(x);
            const Complex c2 = std::cos(x) * std::cos(x);
            return c.A() / s2 + c.B() / c2 + c.C() * s2 - c.D() * s2 * s2;
          },
          [&](const Hyperbolic& h) {
            const Complex ch2 = std::cosh(x) * std::cosh(x);
            const Complex sh2 = std::sinh(x) * std::sinh(x);
            return -h.A() / ch2 + h.B() / sh2 - h.C() * ch2 + h.D() * ch2 * ch2;
          },
      },
      params_);
}

ChartKind PotentialFamily::native_chart() const {
  switch (kind()) {
    case FamilyKind::Sextic:
    case FamilyKind::RadialSextic: return ChartKind::Identity;
    case FamilyKind::Circular: return ChartKind::Trig;
    case FamilyKind::Hyperbolic: return ChartKind::Hyper;
  }
  return ChartKind::Identity;
}

std::vector<double> PotentialFamily::fixed_poles() const {
  switch (kind()) {
    case FamilyKind::Sextic: return {};
    case FamilyKind::RadialSextic: return {0.0};
    case FamilyKind::Circular: return {0.0, 1.0};
    case FamilyKind::Hyperbolic: return {-1.0, 0.0, 1.0};
  }
  return {};
}

PhysicalInterval PotentialFamily::physical_interval() const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (kind()) {
    case FamilyKind::Sextic: return {-inf, inf};
    case FamilyKind::RadialSextic: return {0.0, inf};
    case FamilyKind::Circular: return {0.0, 1.0};
    case FamilyKind::Hyperbolic: return {1.0, inf};
  }
  return {-inf, inf};
}

int PotentialFamily::moving_multiplicity() const {
  switch (kind()) {
    case FamilyKind::Sextic:
    case FamilyKind::Circular: return 1;
    case FamilyKind::RadialSextic:
    case FamilyKind::Hyperbolic: return 2;
  }
  return 1;
}

Complex PotentialFamily::chart_coordinate(Complex x) const {
  switch (native_chart()) {
    case ChartKind::Trig: return std::sin(x) * std::sin(x);
    case ChartKind::Hyper: return std::cosh(x);
    default: return x;
  }
}

Complex PotentialFamily::chart_jacobian(Complex x) const {
  switch (native_chart()) {
    case ChartKind::Trig: return 2.0 * std::sin(x) * std::cos(x);
    case ChartKind::Hyper: return std::sinh(x);
    default: return 1.0;
  }
}

Complex PotentialFamily::chart_second_derivative(Complex x) const {
  switch (native_chart()) {
    case ChartKind::Trig: return 2.0 * std::cos(2.0 * x);
    case ChartKind::Hyper: return std::cosh(x);
    default: return 0.0;
  }
}

}  // namespace qhjqes::engine
