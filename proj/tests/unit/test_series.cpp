#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qhjqes/error.hpp"
#include "qhjqes/series/contour.hpp"
#include "qhjqes/series/laurent_series.hpp"
#include "qhjqes/series/roots.hpp"

using namespace qhjqes;
using namespace qhjqes::series;

namespace {

constexpr Complex I{0.0, 1.0};

LaurentSeries random_series(std::mt19937& rng, int kmin, int terms) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  LaurentSeries s(kmin, kmin + terms - 1);
  for (int k = kmin; k < kmin + terms; ++k) s.set(k, {d(rng), d(rng)});
  return s;
}

// Independent oracle: convolve every stored pair, then keep only exponents
// that no truncated term of either factor could have reached.
std::map<int, Complex> naive_product(const LaurentSeries& a, const LaurentSeries& b) {
  std::map<int, Complex> out;
  for (int i = a.kmin(); i <= a.kmax(); ++i)
    for (int j = b.kmin(); j <= b.kmax(); ++j) out[i + j] += a[i] * b[j];
  const int limit = std::min(a.kmax() + 1 + b.kmin(), b.kmax() + 1 + a.kmin());
  for (auto it = out.begin(); it != out.end();) it = it->first >= limit ? out.erase(it) : ++it;
  return out;
}

}  // namespace

TEST_CASE("series_product examples") {
  const auto inv = LaurentSeries::monomial(-1, 1.0, 6);
  const auto sq = series_product(inv, inv);
  CHECK(sq.kmin() == -2);
  CHECK(sq[-2] == Complex(1.0));
  CHECK(sq[-1] == Complex(0.0));
  CHECK(sq[0] == Complex(0.0));

  LaurentSeries s(-1, 6);
  s.set(-1, 1.0);
  s.set(1, 1.0);
  const auto s2 = series_product(s, s);
  CHECK(s2[-2] == Complex(1.0));
  CHECK(s2[0] == Complex(2.0));
  CHECK(s2[2] == Complex(1.0));
  CHECK(s2[1] == Complex(0.0));
}

TEST_CASE("series_product matches naive convolution on random 8-term series") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_series(rng, -3 + trial % 4, 8);
    const auto b = random_series(rng, -2 + trial % 3, 8);
    const auto prod = series_product(a, b);
    const auto ref = naive_product(a, b);
    CHECK(prod.kmax() - prod.kmin() + 1 == static_cast<int>(ref.size()));
    for (const auto& [k, v] : ref) CHECK(std::abs(prod[k] - v) < 1e-14);
  }
}

TEST_CASE("series_product is commutative and associative") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_series(rng, -2, 9);
    const auto b = random_series(rng, 0, 7);
    const auto c = random_series(rng, -1, 8);
    const auto ab = series_product(a, b);
    const auto ba = series_product(b, a);
    for (int k = ab.kmin(); k <= ab.kmax(); ++k) CHECK(std::abs(ab[k] - ba[k]) < 1e-14);
    const auto l = series_product(ab, c);
    const auto r = series_product(a, series_product(b, c));
    REQUIRE(l.kmin() == r.kmin());
    REQUIRE(l.kmax() == r.kmax());
    for (int k = l.kmin(); k <= l.kmax(); ++k)
      CHECK(std::abs(l[k] - r[k]) <= 1e-14 * std::max(1.0, std::abs(l[k])) * 8);
  }
}

TEST_CASE("empty windows are rejected as insufficient depth") {
  // A product window is never empty for non-empty operands, so the failure
  // surfaces wherever a window is formed, including on access past kmax.
  try {
    LaurentSeries(3, 1);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientDepth);
  }
  const auto prod = series_product(LaurentSeries::monomial(-1, 1.0, 0), LaurentSeries::monomial(-1, 1.0, 5));
  CHECK(prod.kmax() == -1);
  CHECK_THROWS_AS(prod[0], Error);
}

TEST_CASE("series_derivative examples and finite-difference oracle") {
  const auto d1 = series_derivative(LaurentSeries::monomial(-1, 1.0, 4));
  CHECK(d1[-2] == Complex(-1.0));
  const auto d2 = series_derivative(LaurentSeries::monomial(3, 1.0, 6));
  CHECK(d2[2] == Complex(3.0));
  CHECK(d2.kmin() == 2);

  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_series(rng, -3, 10);
    const auto da = series_derivative(a);
    const Complex y = 0.3;
    const double h = 1e-5;
    const Complex fd = (a(y + h) - a(y - h)) / (2.0 * h);
    CHECK(std::abs(da(y) - fd) < 1e-8 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("Leibniz rule on the valid window") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_series(rng, -2, 9);
    const auto b = random_series(rng, -1, 9);
    const auto lhs = series_derivative(series_product(a, b));
    const auto rhs = series_product(series_derivative(a), b) + series_product(a, series_derivative(b));
    const int hi = std::min(lhs.kmax(), rhs.kmax());
    for (int k = std::min(lhs.kmin(), rhs.kmin()); k <= hi; ++k)
      CHECK(std::abs(lhs[k] - rhs[k]) < 1e-13);
  }
}

TEST_CASE("residue extraction") {
  LaurentSeries s(-1, 3);
  s.set(-1, 3.0);
  s.set(0, 5.0);
  CHECK(residue(s) == Complex(3.0));
  CHECK(residue(LaurentSeries::monomial(-2, 1.0, 2)) == Complex(0.0));
  // -i/(y - 0.2) expanded in u = y - 0.2
  CHECK(residue(LaurentSeries::monomial(-1, -I, 5)) == -I);
  CHECK_THROWS_AS(residue(LaurentSeries(0, 4)), Error);
  CHECK_THROWS_AS(residue(LaurentSeries(-4, -2)), Error);
}

TEST_CASE("series_quotient inverts product") {
  std::mt19937 rng(5);
  const auto a = random_series(rng, -1, 10);
  const auto b = random_series(rng, 1, 10);
  const auto q = series_quotient(series_product(a, b), b);
  for (int k = q.kmin(); k <= q.kmax(); ++k) CHECK(std::abs(q[k] - a[k]) < 1e-10);
}

TEST_CASE("poly_roots examples") {
  const auto r1 = poly_roots(Polynomial({1.0, 0.0, 1.0}));
  REQUIRE(r1.size() == 2);
  CHECK(std::abs(r1[0].value - (-I)) < 1e-14);
  CHECK(std::abs(r1[1].value - I) < 1e-14);

  // 1 + sqrt(2) x^2: roots +- i 2^(-1/4) by the quadratic formula.
  const double q = std::pow(2.0, -0.25);
  const auto r2 = poly_roots(Polynomial({1.0, 0.0, std::sqrt(2.0)}));
  REQUIRE(r2.size() == 2);
  CHECK(std::abs(r2[0].value - (-I * q)) < 1e-14);
  CHECK(std::abs(r2[1].value - I * q) < 1e-14);

  // (x-1)^2 (x+2) = x^3 - 3x + 2
  const auto r3 = poly_roots(Polynomial({2.0, -3.0, 0.0, 1.0}));
  REQUIRE(r3.size() == 2);
  CHECK(std::abs(r3[0].value - Complex(-2.0)) < 1e-12);
  CHECK(r3[0].multiplicity == 1);
  CHECK(std::abs(r3[1].value - Complex(1.0)) < 1e-7);
  CHECK(r3[1].multiplicity == 2);

  CHECK_THROWS_AS(poly_roots(Polynomial{}), Error);
  CHECK_THROWS_AS(poly_roots(Polynomial::constant(3.0)), Error);
}

TEST_CASE("poly_roots monic reconstruction reproduces coefficients") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int deg = 1 + trial % 9;
    std::vector<Complex> c(deg + 1);
    for (auto& v : c) v = {d(rng), trial % 2 ? d(rng) : 0.0};
    c.back() = 1.0;
    const Polynomial p(c);
    std::vector<Complex> flat;
    int total = 0;
    for (const auto& r : poly_roots(p)) {
      total += r.multiplicity;
      for (int m = 0; m < r.multiplicity; ++m) flat.push_back(r.value);
    }
    CHECK(total == deg);
    const auto rebuilt = Polynomial::from_roots(flat);
    for (int k = 0; k <= deg; ++k) CHECK(std::abs(rebuilt[k] - p[k]) < 1e-10);
  }
}

TEST_CASE("contour_integral examples") {
  const CircleContour unit{0.0, 1.0};
  const auto v1 = contour_integral([](Complex z) { return 1.0 / z; }, unit, 64);
  CHECK(std::abs(v1 - 2.0 * std::numbers::pi * I) < 1e-12);
  const auto v2 = contour_integral([](Complex z) { return z; }, unit, 64);
  CHECK(std::abs(v2) < 1e-12);
  const auto v3 = contour_integral([](Complex z) { return -I / (z - 0.3); }, CircleContour{0.3, 0.1});
  CHECK(std::abs(v3 - 2.0 * std::numbers::pi * I * (-I)) < 1e-10);

  CHECK_THROWS_AS(contour_integral([](Complex z) { return z; }, unit, 8), Error);
  try {
    contour_integral([](Complex z) { return 1.0 / (z - 1.0); }, unit, 64);
    FAIL("expected pole on contour");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PoleOnContour);
  }
}

TEST_CASE("contour_integral of random rational functions equals 2 pi i sum of residues") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> rad(0.0, 0.7), ang(0.0, 2.0 * std::numbers::pi), d(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const int npoles = 1 + trial % 5;
    std::vector<Complex> poles;
    for (int k = 0; k < npoles; ++k) poles.push_back(std::polar(rad(rng), ang(rng)));
    std::vector<Complex> num(npoles);
    for (auto& v : num) v = {d(rng), d(rng)};
    const Polynomial N(num);
    const Polynomial D = Polynomial::from_roots(poles);
    const Polynomial dD = D.derivative();
    // Partial fractions: simple poles, residue N(p)/D'(p).
    Complex expected{};
    for (const auto& p : poles) expected += N(p) / dD(p);
    expected *= 2.0 * std::numbers::pi * I;
    const auto got = contour_integral([&](Complex z) { return N(z) / D(z); }, CircleContour{0.0, 1.0}, 256);
    CHECK(std::abs(got - expected) < 1e-10);
  }
}

TEST_CASE("stadium contour integral counts enclosed poles") {
  // Poles at -1, 0.5 inside, 2i outside.
  const auto f = [](Complex z) { return 1.0 / (z + 1.0) + 3.0 / (z - 0.5) + 1.0 / (z - 2.0 * I); };
  const StadiumContour s{-1.0, 0.5, 0.4};
  const auto got = contour_integral(f, s);
  CHECK(std::abs(got - 2.0 * std::numbers::pi * I * 4.0) < 1e-12);
}
