#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "doctest.h"
#include "qhjqes/engine/ledger.hpp"
#include "qhjqes/oracle/oracle.hpp"
#include "qhjqes/spectra/spectra.hpp"

using namespace qhjqes;
using namespace qhjqes::oracle;
using engine::qes_parameterize;

namespace {

const RealPotential harmonic = [](double x) { return x * x; };

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::InvalidInput;
}

// Independent check: roots of det(T - lambda) by the three-term determinant
// recurrence, located by sign changes on a fine scan and polished by secant.
std::vector<double> charpoly_roots(const Tridiagonal& t) {
  const int n = static_cast<int>(t.diag.size());
  const auto det = [&](double l) {
    double p0 = 1.0, p1 = t.diag[0] - l;
    for (int i = 1; i < n; ++i) {
      const double p2 = (t.diag[i] - l) * p1 - t.off[i - 1] * t.off[i - 1] * p0;
      p0 = p1, p1 = p2;
    }
    return p1;
  };
  std::vector<double> roots;
  const double lo = -20, hi = 20;
  const int steps = 400000;
  double a = lo, fa = det(a);
  for (int i = 1; i <= steps; ++i) {
    const double b = lo + (hi - lo) * i / steps, fb = det(b);
    if (fa == 0.0) roots.push_back(a);
    else if (fa * fb < 0.0) {
      double x0 = a, x1 = b, f0 = fa, f1 = fb;
      for (int it = 0; it < 200 && x1 - x0 > 1e-15; ++it) {
        const double m = 0.5 * (x0 + x1), fm = det(m);
        (fm * f0 <= 0 ? x1 : x0) = m;
        (fm * f0 <= 0 ? f1 : f0) = fm;
      }
      roots.push_back(0.5 * (x0 + x1));
    }
    a = b, fa = fb;
  }
  return roots;
}

}  // namespace

TEST_CASE("grid and discretize") {
  CHECK(kind_of([] { Grid(0, 1, 99); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { Grid(1, 0, 200); }) == ErrorKind::InvalidInput);
  const Grid g(0.0, 1.01, 100);
  CHECK(g.h() == doctest::Approx(0.01));
  const auto t = discretize(harmonic, g);
  CHECK(t.diag.size() == 100);
  CHECK(t.off.size() == 99);
  CHECK(t.off[0] == doctest::Approx(-1e4));
  CHECK(t.diag[0] == doctest::Approx(2e4 + 0.01 * 0.01));
  CHECK(kind_of([] { discretize([](double x) { return x > 0.5 ? std::nan("") : x; }, Grid(0, 1, 100)); }) ==
        ErrorKind::InvalidInput);
}

TEST_CASE("low_spectrum examples") {
  const Tridiagonal t2{{2, 2}, {-1}};
  const auto e2 = low_spectrum(t2, 2);
  CHECK(e2[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e2[1] == doctest::Approx(3.0).epsilon(1e-14));
  const Tridiagonal d{{5, 3, 1, 4, 2}, {0, 0, 0, 0}};
  const auto ed = low_spectrum(d, 3);
  REQUIRE(ed.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(ed[i] == doctest::Approx(i + 1.0).epsilon(1e-14));
  CHECK(kind_of([&] { low_spectrum(d, 6); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([&] { low_spectrum(d, 0); }) == ErrorKind::InvalidInput);
}

TEST_CASE("low_spectrum matches the characteristic polynomial and a dense solver") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int n = 2; n <= 8; ++n) {
    Tridiagonal t;
    for (int i = 0; i < n; ++i) t.diag.push_back(u(rng));
    for (int i = 0; i + 1 < n; ++i) t.off.push_back(u(rng));
    const auto bis = low_spectrum(t, n);
    const auto ref = charpoly_roots(t);
    REQUIRE(ref.size() == std::size_t(n));
    for (int i = 0; i < n; ++i) CHECK(std::abs(bis[i] - ref[i]) < 1e-10);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = t.diag[i];
    for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = t.off[i];
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues();
    for (int i = 0; i < n; ++i) CHECK(std::abs(bis[i] - ev(i)) < 1e-12);
  }
}

TEST_CASE("harmonic sanity") {
  const auto e = low_spectrum(discretize(harmonic, Grid(-10, 10, 2000)), 3);
  CHECK(std::abs(e[0] - 1) < 1e-3);
  CHECK(std::abs(e[1] - 3) < 1e-3);
  CHECK(std::abs(e[2] - 5) < 1e-3);
  const auto s = refine(harmonic, Domain{-10, 10}, 3, 1e-6);
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(s.energies[k] - (2 * k + 1)) < 1e-6);
    CHECK(s.error_estimates[k] > 0.0);
  }
}

TEST_CASE("second-order convergence on the harmonic oscillator") {
  std::vector<double> lh, le;
  for (int N : {255, 511, 1023, 2047}) {
    const Grid g(-10, 10, N);
    const double e = low_spectrum(discretize(harmonic, g), 1)[0];
    lh.push_back(std::log(g.h()));
    le.push_back(std::log(std::abs(e - 1.0)));
  }
  const int n = static_cast<int>(lh.size());
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) mx += lh[i] / n, my += le[i] / n;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < n; ++i) sxy += (lh[i] - mx) * (le[i] - my), sxx += (lh[i] - mx) * (lh[i] - mx);
  CHECK(std::abs(sxy / sxx - 2.0) < 0.2);
}

TEST_CASE("sextic anchors") {
  const PotentialFamily f3 = engine::Sextic{-3.0, 0.0, 1.0};
  const auto s3 = refine(f3, 1, 1e-6);
  CHECK(std::abs(s3.energies[0]) < 1e-5);

  const PotentialFamily f7 = engine::Sextic{-7.0, 0.0, 1.0};
  const auto e7 = low_spectrum(discretize(f7, Grid(-6, 6, 4000)), 4);
  const double r = 2 * std::sqrt(2.0);
  const auto near = [&](double target) {
    double best = 1e300;
    for (double e : e7) best = std::min(best, std::abs(e - target));
    return best;
  };
  CHECK(near(-r) < 1e-4);
  CHECK(near(r) < 1e-4);
}

TEST_CASE("ground state bounds decrease with the domain") {
  const PotentialFamily f = engine::Sextic{-3.0, 0.0, 1.0};
  double prev = 1e300;
  for (double L : {1.0, 1.5, 2.0, 3.0}) {
    const Grid g(-L, L, int(400 * L));
    const double e = low_spectrum(discretize(f, g), 1)[0];
    CHECK(e < prev + 1e-6);
    prev = e;
  }
}

TEST_CASE("algebraic energies are contained in the oracle spectrum for every family") {
  std::vector<PotentialFamily> fams;
  for (int n = 0; n <= 4; ++n) {
    fams.push_back(qes_parameterize(engine::SexticTemplate{1.0, 0.0}, n));
    fams.push_back(qes_parameterize(engine::SexticTemplate{1.0, 1.0}, n));
  }
  for (int n = 0; n <= 2; ++n) {
    fams.push_back(qes_parameterize(engine::RadialTemplate{1.25, 1.0, 0.5}, n));
    fams.push_back(qes_parameterize(engine::CircularTemplate{1.1, 1.3, 0.8}, n));
    fams.push_back(qes_parameterize(engine::HyperbolicTemplate{1.2, 1.3, 0.7}, n));
  }
  for (const auto& f : fams) {
    const auto states = spectra::algebraic_states(f);
    const auto L = engine::quantization_ledger(f);
    // A state's level index is its number of physical zeros, at most n.
    const int k = L.condition.n + 1;
    const auto o = refine(f, k, 1e-5);
    for (const auto& s : states) {
      double best = 1e300;
      std::size_t idx = 0;
      for (std::size_t i = 0; i < o.energies.size(); ++i)
        if (std::abs(o.energies[i] - s.energy) < best) best = std::abs(o.energies[i] - s.energy), idx = i;
      CAPTURE(f.name());
      CAPTURE(s.energy);
      CHECK(best <= o.error_estimates[idx]);
      CHECK(best < 1e-5);
    }
  }
}

TEST_CASE("refine errors") {
  CHECK(kind_of([] { refine(harmonic, Domain{-10, 10}, 1, 1e-9); }) == ErrorKind::InvalidInput);
  try {
    refine(harmonic, Domain{-10, 10}, 3, 1e-8, RefineOptions{511, 2000});
    FAIL("expected non-convergence");
  } catch (const NonConvergenceError& e) {
    CHECK(e.kind() == ErrorKind::NonConvergence);
    CHECK(e.best().energies.size() == 3);
  }
}
