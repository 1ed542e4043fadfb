#include <cmath>

#include "doctest.h"
#include "qhjqes/engine/ledger.hpp"
#include "qhjqes/error.hpp"
#include "qhjqes/qmf/qmf.hpp"

using namespace qhjqes::qmf;
using qhjqes::Error;
using qhjqes::ErrorKind;
using qhjqes::engine::PotentialFamily;
namespace engine = qhjqes::engine;
namespace series = qhjqes::series;
namespace spectra = qhjqes::spectra;
using engine::qes_parameterize;
using engine::SexticTemplate;

namespace {

constexpr Complex I{0.0, 1.0};

spectra::AlgebraicState sextic_state(int n, int level, double a = 1.0, double b = 0.0) {
  return spectra::algebraic_states(qes_parameterize(SexticTemplate{a, b}, n)).at(level);
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("qmf examples") {
  const auto e0 = qmf(sextic_state(0, 0));
  CHECK(std::abs(e0(1.0) - I) < 1e-15);
  CHECK(std::abs(e0(Complex(0.3, 0.7)) - I * std::pow(Complex(0.3, 0.7), 3)) < 1e-14);

  const auto e1 = qmf(sextic_state(1, 0));
  for (const Complex z : {Complex(0.5, 0.1), Complex(-1.2, 0.8)})
    CHECK(std::abs(e1(z) - (-I / z + I * z * z * z)) < 1e-13);

  // Schwarz reflection for real-parameter families.
  const auto e2 = qmf(sextic_state(2, 1, 1.0, 1.0));
  for (const Complex z : {Complex(0.4, 0.9), Complex(-2.0, 0.3)})
    CHECK(std::abs(e2(std::conj(z)) + std::conj(e2(z))) < 1e-12);

  // Agrees with -i psi'/psi from the eigenfunction jet, also in the chart families.
  const auto sc = spectra::algebraic_states(qes_parameterize(engine::CircularTemplate{1.1, 1.3, 0.8}, 2))[1];
  const auto ec = qmf(sc);
  const auto j = spectra::eigenfunction_jet(sc, 0.7);
  CHECK(std::abs(ec(0.7) - (-I * j.first / j.value)) < 1e-12);
}

TEST_CASE("zero_census examples") {
  const auto plus = zero_census(sextic_state(2, 1));
  CHECK(plus.n_real == 2);
  CHECK(plus.n_complex == 0);
  const auto minus = zero_census(sextic_state(2, 0));
  CHECK(minus.n_real == 0);
  CHECK(minus.n_complex == 2);
  const auto zero = zero_census(sextic_state(0, 0));
  CHECK(zero.total == 0);
  CHECK(zero.quantization_value == 0.0);
  CHECK(std::abs(zero.global_count) < 1e-12);
}

TEST_CASE("residue_at_zero examples") {
  const auto e1 = qmf(sextic_state(1, 0));
  CHECK(std::abs(residue_at_zero(e1, 0.0) + I) < 1e-12);
  const double r = std::pow(2.0, -0.25);
  CHECK(std::abs(residue_at_zero(qmf(sextic_state(2, 1)), r) + I) < 1e-10);
  CHECK(std::abs(residue_at_zero(qmf(sextic_state(2, 0)), I * r) + I) < 1e-10);
}

TEST_CASE("quantization_check examples") {
  CHECK(quantization_check(qmf(sextic_state(2, 1))) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(quantization_check(qmf(sextic_state(2, 0))) == 0.0);
  CHECK(quantization_check(qmf(sextic_state(1, 0))) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("global_pole_count examples and two-route agreement") {
  for (int level : {0, 1}) {
    const auto g = global_pole_count(qmf(sextic_state(2, level)));
    CHECK(std::abs(g.ledger_route - 2.0) < 1e-10);
    CHECK(std::abs(g.argument_route - 2.0) < 1e-10);
  }
  CHECK(std::abs(global_pole_count(qmf(sextic_state(0, 0))).ledger_route) < 1e-12);

  const auto rad = qes_parameterize(engine::RadialTemplate{1.0, 1.0, 0.0}, 2);
  for (const auto& s : spectra::algebraic_states(rad)) {
    const auto g = global_pole_count(qmf(s));
    CHECK(std::abs(g.ledger_route - 4.0) < 1e-10);  // 2 n in the x-plane
    CHECK(std::abs(g.ledger_route - g.argument_route) < 1e-10);
  }
}

TEST_CASE("radial fixed-pole residue") {
  const double S = 1.25;
  const auto rad = qes_parameterize(engine::RadialTemplate{S, 1.0, 0.5}, 2);
  for (const auto& s : spectra::algebraic_states(rad)) {
    const auto c = zero_census(s);
    REQUIRE(c.fixed.size() == 1);
    CHECK(std::abs(c.fixed[0].measured_residue + 0.5 * I * (4 * S - 1)) < 1e-8);
  }
}

TEST_CASE("residue universality and counting laws for all families") {
  std::vector<PotentialFamily> fams;
  for (int n = 0; n <= 6; ++n) {
    fams.push_back(qes_parameterize(SexticTemplate{1.0, 0.0}, n));
    fams.push_back(qes_parameterize(SexticTemplate{1.0, 1.0}, n));
    fams.push_back(qes_parameterize(SexticTemplate{0.6, -0.8}, n));
  }
  for (int n = 0; n <= 3; ++n) {
    fams.push_back(qes_parameterize(engine::RadialTemplate{1.25, 1.0, 0.5}, n));
    fams.push_back(qes_parameterize(engine::CircularTemplate{1.1, 1.3, 0.8}, n));
    fams.push_back(qes_parameterize(engine::HyperbolicTemplate{1.2, 0.9, 0.7}, n));
  }
  for (const auto& f : fams) {
    const int mult = f.moving_multiplicity();
    for (const auto& s : spectra::algebraic_states(f)) {
      CAPTURE(f.name());
      CAPTURE(s.energy);
      const auto c = zero_census(s);
      for (const auto& p : c.moving) CHECK(std::abs(p.measured_residue + I) < 1e-8);
      for (const auto& p : c.fixed) CHECK(std::abs(p.measured_residue - p.expected_residue) < 1e-8);
      CHECK(std::abs(c.quantization_value - c.n_real) < 1e-8);
      CHECK(std::lround(c.quantization_value) == c.n_real);
      CHECK(std::abs(c.global_count - mult * s.n_label) < 1e-8);
      CHECK(std::abs(c.global_count - c.argument_count) < 1e-10);
      CHECK(c.total == mult * s.n_label);
    }
  }
}

TEST_CASE("real zero count equals the level index within each sextic sector") {
  // Oscillation: the k-th algebraic state of a sector has k nodes per half line pair.
  const auto states = spectra::algebraic_states(qes_parameterize(SexticTemplate{1.0, 1.0}, 6));
  int prev = -1;
  for (const auto& s : states) {
    const int nr = zero_census(s).n_real;
    CHECK(nr > prev);
    prev = nr;
  }
}

TEST_CASE("infinity_order_check") {
  const auto o0 = infinity_order_check(qmf(sextic_state(0, 0)));
  CHECK(std::abs(o0.exponent - 3.0) < 0.01);
  CHECK(std::abs(o0.coefficient - I) < 1e-3);
  const auto o2 = infinity_order_check(qmf(sextic_state(0, 0, 2.0)));
  CHECK(std::abs(o2.coefficient - 2.0 * I) < 2e-3);
  for (int level : {0, 1}) {
    const auto o = infinity_order_check(qmf(sextic_state(2, level, 1.0, 1.0)));
    CHECK(std::abs(o.exponent - 3.0) < 0.01);
    CHECK(std::abs(o.coefficient - I) < 1e-3);
  }
  const auto circ = spectra::algebraic_states(qes_parameterize(engine::CircularTemplate{}, 0))[0];
  CHECK(kind_of([&] { infinity_order_check(qmf(circ)); }) == ErrorKind::InvalidInput);
}

TEST_CASE("census error paths") {
  // A hand-made state with a double zero.
  auto s = sextic_state(2, 0);
  s.poly = series::Polynomial({0.0, 0.0, 1.0});
  s.sector_power = 0;
  CHECK(kind_of([&] { zero_census(s); }) == ErrorKind::DegenerateZero);

  // Complex pair too close to the real zeros to separate.
  auto t = sextic_state(2, 1);
  // z = 4 gives real zeros +-2; z = 1 +- 1e-6 i puts zeros 5e-7 off the enclosed segment.
  t.poly = series::Polynomial::from_roots(std::vector<Complex>{4.0, Complex(1.0, 1e-6), Complex(1.0, -1e-6)});
  CHECK(kind_of([&] { quantization_check(qmf(t)); }) == ErrorKind::NoSeparatingContour);
}
