#include <cmath>
#include <random>

#include "doctest.h"
#include "qhjqes/engine/ledger.hpp"
#include "qhjqes/error.hpp"
#include "qhjqes/series/roots.hpp"
#include "qhjqes/spectra/spectra.hpp"

using namespace qhjqes;
using namespace qhjqes::spectra;
using engine::CircularTemplate;
using engine::HyperbolicTemplate;
using engine::RadialTemplate;
using engine::SexticTemplate;
using engine::qes_parameterize;

namespace {

constexpr Complex I{0.0, 1.0};

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::InvalidInput;
}

std::vector<PotentialFamily> sample_families() {
  std::vector<PotentialFamily> out;
  for (int n = 0; n <= 6; ++n) {
    out.push_back(qes_parameterize(SexticTemplate{1.0, 0.0}, n));
    out.push_back(qes_parameterize(SexticTemplate{1.0, 1.0}, n));
    out.push_back(qes_parameterize(SexticTemplate{0.7, -0.4}, n));
  }
  for (int n = 0; n <= 4; ++n) {
    out.push_back(qes_parameterize(RadialTemplate{1.25, 1.0, 0.5}, n));
    out.push_back(qes_parameterize(RadialTemplate{0.9, 0.6, -0.3}, n));
    out.push_back(qes_parameterize(CircularTemplate{1.1, 1.3, 0.8}, n));
    out.push_back(qes_parameterize(CircularTemplate{0.6, 0.7, 2.0}, n));
    out.push_back(qes_parameterize(HyperbolicTemplate{1.2, 0.9, 0.7}, n));
    out.push_back(qes_parameterize(HyperbolicTemplate{0.8, 1.6, 1.5}, n));
  }
  return out;
}

}  // namespace

TEST_CASE("gauge_from_residues") {
  const auto g0 = gauge_from_residues(qes_parameterize(SexticTemplate{1.0, 0.0}, 0));
  CHECK(g0.prefactors.empty());
  CHECK(g0.gauge_polynomial.degree() == 4);
  CHECK(std::abs(g0.gauge_polynomial[4] - 0.25) < 1e-14);
  CHECK(std::abs(g0.gauge_polynomial[2]) < 1e-14);

  const auto gab = gauge_from_residues(qes_parameterize(SexticTemplate{1.7, -0.6}, 3));
  CHECK(std::abs(gab.gauge_polynomial[4] - 1.7 / 4) < 1e-13);
  CHECK(std::abs(gab.gauge_polynomial[2] + 0.3) < 1e-13);
  CHECK(std::abs(gab.gauge_polynomial[3]) < 1e-13);
  CHECK(std::abs(gab.gauge_polynomial[1]) < 1e-13);

  const double S = 1.25;
  const auto gr = gauge_from_residues(qes_parameterize(RadialTemplate{S, 1.0, 0.5}, 2));
  REQUIRE(gr.prefactors.size() == 1);
  CHECK(gr.prefactors[0].exponent == doctest::Approx(2 * S - 0.5).epsilon(1e-13));

  const auto gc = gauge_from_residues(qes_parameterize(CircularTemplate{1.1, 1.3, 0.8}, 1));
  REQUIRE(gc.prefactors.size() == 2);
  CHECK(gc.prefactors[0].exponent == doctest::Approx((2 * 1.1 - 0.5) / 2));
  CHECK(gc.prefactors[1].exponent == doctest::Approx((2 * 1.3 - 0.5) / 2));
  CHECK(gc.prefactors[1].reflected);
  CHECK(std::abs(gc.gauge_polynomial[1] - 0.4) < 1e-13);

  const auto gh = gauge_from_residues(qes_parameterize(HyperbolicTemplate{1.2, 0.9, 0.7}, 1));
  CHECK(std::abs(gh.gauge_polynomial[2] - 0.35) < 1e-13);
  CHECK(gh.variable_power == 2);
}

TEST_CASE("recursion_matrix: sextic examples") {
  const auto m0 = recursion_matrix(qes_parameterize(SexticTemplate{1.0, 0.0}, 0), Sector::Even);
  CHECK(m0.dimension == 1);
  CHECK(m0.entries(0, 0) == 0.0);

  const auto m1 = recursion_matrix(qes_parameterize(SexticTemplate{1.0, 0.0}, 1), Sector::Odd);
  CHECK(m1.dimension == 1);
  CHECK(m1.entries(0, 0) == 0.0);

  const auto m2 = recursion_matrix(qes_parameterize(SexticTemplate{1.0, 0.0}, 2), Sector::Even);
  REQUIRE(m2.dimension == 2);
  CHECK(m2.entries(0, 0) == doctest::Approx(0.0));
  CHECK(m2.entries(0, 1) == doctest::Approx(-2.0));
  CHECK(m2.entries(1, 0) == doctest::Approx(-4.0));
  CHECK(m2.entries(1, 1) == doctest::Approx(0.0));
  const auto e2 = algebraic_spectrum(m2);
  CHECK(e2[0] == doctest::Approx(-2 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(e2[1] == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-14));

  for (int n = 0; n <= 9; ++n) {
    const auto m = recursion_matrix(qes_parameterize(SexticTemplate{1.3, 0.2}, n));
    CHECK(m.dimension == n / 2 + 1);
    CHECK(m.sector == (n % 2 ? Sector::Odd : Sector::Even));
  }
}

TEST_CASE("recursion_matrix: non-truncating parameterizations are reported") {
  const auto wrong_parity = qes_parameterize(SexticTemplate{1.0, 0.0}, 2);
  CHECK(kind_of([&] { recursion_matrix(wrong_parity, Sector::Odd); }) == ErrorKind::QesConditionViolated);
  const PotentialFamily perturbed = engine::Sextic{-7.0 + 0.1, 0.0, 1.0};
  try {
    recursion_matrix(perturbed, Sector::Even);
    FAIL("expected QesConditionViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::QesConditionViolated);
    CHECK(std::string(e.what()).find("residual coefficient") != std::string::npos);
  }
  CHECK(kind_of([] { recursion_matrix(PotentialFamily(engine::Circular{}), Sector::Even); }) ==
        ErrorKind::InvalidInput);
}

TEST_CASE("algebraic_spectrum rejects complex eigenvalues") {
  RecursionMatrix m;
  m.dimension = 2;
  m.entries = Eigen::MatrixXd{{0.0, 1.0}, {-1.0, 0.0}};
  CHECK(kind_of([&] { algebraic_spectrum(m); }) == ErrorKind::NonRealEnergy);
  m.dimension = 1;
  m.entries = Eigen::MatrixXd{{0.0}};
  CHECK(algebraic_spectrum(m) == std::vector<double>{0.0});
}

TEST_CASE("eigenfunction examples") {
  const auto s0 = algebraic_states(qes_parameterize(SexticTemplate{1.0, 0.0}, 0));
  REQUIRE(s0.size() == 1);
  CHECK(std::abs(eigenfunction(s0[0])(0.0) - 1.0) < 1e-15);
  CHECK(std::abs(eigenfunction(s0[0])(1.3) - std::exp(-std::pow(1.3, 4) / 4)) < 1e-15);

  const auto s1 = algebraic_states(qes_parameterize(SexticTemplate{1.0, 0.0}, 1));
  REQUIRE(s1.size() == 1);
  CHECK(std::abs(eigenfunction(s1[0])(0.8) - 0.8 * std::exp(-std::pow(0.8, 4) / 4)) < 1e-15);

  const auto s2 = algebraic_states(qes_parameterize(SexticTemplate{1.0, 0.0}, 2));
  REQUIRE(s2.size() == 2);
  // Monic in z = x^2: P = z + 1/sqrt2 for E = -2sqrt2 (i.e. 1 + sqrt2 x^2 up to scale).
  CHECK(std::abs(s2[0].poly[0] - 1.0 / std::sqrt(2.0)) < 1e-13);
  CHECK(std::abs(s2[1].poly[0] + 1.0 / std::sqrt(2.0)) < 1e-13);
  const double r = std::pow(2.0, -0.25);
  const auto z0 = series::poly_roots(s2[0].census_polynomial());
  REQUIRE(z0.size() == 2);
  CHECK(std::abs(z0[0].value + I * r) < 1e-12);
  CHECK(std::abs(z0[1].value - I * r) < 1e-12);
  const auto z1 = series::poly_roots(s2[1].census_polynomial());
  CHECK(std::abs(z1[0].value + r) < 1e-12);
  CHECK(std::abs(z1[1].value - r) < 1e-12);
}

TEST_CASE("degree law, residual check and realness over every family") {
  for (const auto& f : sample_families()) {
    const auto L = engine::quantization_ledger(f);
    const auto states = algebraic_states(f);
    CHECK(!states.empty());
    for (const auto& s : states) {
      CAPTURE(f.name());
      CAPTURE(s.energy);
      CHECK(s.n_label == L.condition.n);
      CHECK(s.census_polynomial().degree() == L.moving_multiplicity * L.condition.n);
      CHECK(std::abs(s.census_polynomial().leading() - 1.0) < 1e-15);
      int total = 0;
      if (s.census_polynomial().degree() > 0)
        for (const auto& z : series::poly_roots(s.census_polynomial())) total += z.multiplicity;
      CHECK(total == L.moving_multiplicity * s.n_label);
      CHECK(schrodinger_residual(s, residual_sample_points(f)) < 1e-8);
    }
  }
}

TEST_CASE("sextic states have definite parity") {
  for (int n = 0; n <= 6; ++n) {
    for (const auto& s : algebraic_states(qes_parameterize(SexticTemplate{1.0, 1.0}, n))) {
      const auto psi = eigenfunction(s);
      const double sign = s.sector == Sector::Odd ? -1.0 : 1.0;
      for (const double x : {0.1, 0.7, 1.9, 3.2}) CHECK(std::abs(psi(-x) - sign * psi(x)) <= 1e-14 * std::abs(psi(x)));
    }
  }
}

TEST_CASE("schrodinger_residual detects a wrong energy") {
  auto s = algebraic_states(qes_parameterize(SexticTemplate{1.0, 0.0}, 2))[0];
  s.energy += 1e-3;
  CHECK(schrodinger_residual(s, residual_sample_points(s.family)) > 1e-5);
}

TEST_CASE("closed-form ground states of the chart families") {
  // M = 0: psi is the bare gauge, energy is the diagonal constant.
  const double S1 = 1.1, S2 = 1.3, q1 = 0.8;
  const double l1 = 2 * S1 - 0.5, l2 = 2 * S2 - 0.5;
  const auto c = algebraic_states(qes_parameterize(CircularTemplate{S1, S2, q1}, 0));
  REQUIRE(c.size() == 1);
  CHECK(c[0].energy == doctest::Approx((l1 + l2) * (l1 + l2) + 2 * q1 * l1 + q1));
  const double x = 0.6, t = std::sin(x) * std::sin(x);
  CHECK(std::abs(eigenfunction(c[0])(x) - std::pow(t, l1 / 2) * std::pow(1 - t, l2 / 2) * std::exp(-q1 * t / 2)) < 1e-14);

  const auto h = algebraic_states(qes_parameterize(HyperbolicTemplate{S1, S2, q1}, 0));
  REQUIRE(h.size() == 1);
  CHECK(h[0].energy == doctest::Approx(-(l1 + l2) * (l1 + l2) - 2 * q1 * l1 - q1));
}
