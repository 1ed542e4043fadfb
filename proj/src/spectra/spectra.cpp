#include "qhjqes/spectra/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qhjqes/engine/ledger.hpp"
#include "qhjqes/engine/matching.hpp"
#include "qhjqes/engine/riccati.hpp"
#include "qhjqes/error.hpp"

namespace qhjqes::spectra {

using engine::ChartKind;
using engine::FamilyKind;

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kStructTol = 1e-9;
constexpr double kTruncTol = 1e-9;
constexpr double kRealTol = 1e-10;

// Three-term action L[z^k] = lower(k) z^(k-1) + diag(k) z^k + upper(k) z^(k+1).
// upper is affine in k: upper(k) = u0 + u1 k.
struct ThreeTerm {
  std::function<double(int)> lower;
  std::function<double(int)> diag;
  double u0 = 0.0;
  double u1 = 0.0;
  double upper(int k) const { return u0 + u1 * k; }
};

void require_structural(double residual, double scale, const char* what) {
  if (std::abs(residual) > kStructTol * std::max(1.0, std::abs(scale))) {
    std::ostringstream os;
    os << "matching failure: gauge does not cancel the " << what << " term (residual " << residual << ")";
    throw Error(ErrorKind::MatchingFailure, os.str());
  }
}

double exponent_at(const GaugeSpec& g, double location) {
  for (const auto& p : g.prefactors)
    if (p.location == location) return p.exponent;
  return 0.0;
}

double real_coeff(const Polynomial& p, int k) { return k <= p.degree() ? p[k].real() : 0.0; }

// Substituting psi = prefactors * s^mu P(z) exp(-G) into -psi'' + V psi = E psi and
// collecting powers of z. The pole and top-degree terms cancel by construction of
// the gauge; those cancellations are re-checked rather than assumed.
ThreeTerm action(const PotentialFamily& family, const GaugeSpec& g, int mu_sector) {
  ThreeTerm t;
  switch (family.kind()) {
    case FamilyKind::Sextic:
    case FamilyKind::RadialSextic: {
      // z = x^2, G = a x^4/4 + b x^2/2, V = g/x^2 + alpha x^2 + beta x^4 + gamma x^6.
      const double a = 4.0 * real_coeff(g.gauge_polynomial, 4);
      const double b = 2.0 * real_coeff(g.gauge_polynomial, 2);
      double alpha, beta, gamma, gc = 0.0, mu;
      if (family.kind() == FamilyKind::Sextic) {
        const auto& s = family.as<engine::Sextic>();
        alpha = s.alpha, beta = s.beta, gamma = s.gamma;
        mu = mu_sector;
      } else {
        const auto& r = family.as<engine::RadialSextic>();
        alpha = r.c2(), beta = 2.0 * r.a * r.b, gamma = r.a * r.a, gc = r.g();
        mu = exponent_at(g, 0.0);
      }
      require_structural(a * a - gamma, gamma, "x^6");
      require_structural(2.0 * a * b - beta, beta, "x^4");
      require_structural(gc - mu * (mu - 1.0), gc, "x^-2");
      t.lower = [mu, gc](int k) { return gc - (mu + 2 * k) * (mu + 2 * k - 1); };
      t.diag = [mu, b](int k) { return b * (2 * mu + 4 * k + 1); };
      t.u0 = 2 * a * mu + 3 * a - b * b + alpha;
      t.u1 = 4 * a;
      break;
    }
    case FamilyKind::Circular: {
      // z = t = sin^2 x, psi = t^k1 (1-t)^k2 exp(-w t) P(t).
      const auto& c = family.as<engine::Circular>();
      const double k1 = exponent_at(g, 0.0), k2 = exponent_at(g, 1.0);
      const double w = real_coeff(g.gauge_polynomial, 1);
      require_structural(c.A() - 2 * k1 * (2 * k1 - 1), c.A(), "1/t");
      require_structural(c.B() - 2 * k2 * (2 * k2 - 1), c.B(), "1/(1-t)");
      require_structural(4 * w * w - c.D(), c.D(), "t^2");
      const double K0 = 4 * (k1 + k2) * (k1 + k2) + 8 * k1 * w + 2 * w;
      t.lower = [k1](int k) { return -k * (4.0 * k + 8 * k1 - 2); };
      t.diag = [=](int k) { return 4.0 * k * (k - 1) + k * (8 * k1 + 8 * k2 + 8 * w + 4) + K0; };
      t.u0 = c.C() - 4 * w * w - 8 * w * (k1 + k2) - 4 * w;
      t.u1 = -8 * w;
      break;
    }
    case FamilyKind::Hyperbolic: {
      // z = cosh^2 x = t^2, psi = z^k1 (z-1)^k2 exp(-w z) P(z).
      const auto& h = family.as<engine::Hyperbolic>();
      const double k1 = exponent_at(g, 0.0) / 2.0, k2 = exponent_at(g, 1.0);
      require_structural(exponent_at(g, -1.0) - k2, k2, "(t+1)^-1");
      const double w = real_coeff(g.gauge_polynomial, 2);
      require_structural(h.A() - 2 * k1 * (2 * k1 - 1), h.A(), "1/z");
      require_structural(h.B() - 2 * k2 * (2 * k2 - 1), h.B(), "1/(z-1)");
      require_structural(h.D() - 4 * w * w, h.D(), "z^2");
      const double K0 = -4 * (k1 + k2) * (k1 + k2) - 8 * k1 * w - 2 * w;
      t.lower = [k1](int k) { return k * (4.0 * k + 8 * k1 - 2); };
      t.diag = [=](int k) { return -4.0 * k * (k - 1) - k * (8 * k1 + 8 * k2 + 8 * w + 4) + K0; };
      t.u0 = 4 * w * w + 8 * w * (k1 + k2) + 4 * w - h.C();
      t.u1 = 8 * w;
      break;
    }
  }
  return t;
}

}  // namespace

const char* to_string(Sector s) {
  switch (s) {
    case Sector::Even: return "even";
    case Sector::Odd: return "odd";
    case Sector::Chart: return "chart";
  }
  return "?";
}

Complex GaugeSpec::prefactor(Complex s) const {
  Complex v = 1.0;
  for (const auto& p : prefactors) v *= std::pow(p.reflected ? p.location - s : s - p.location, p.exponent);
  return v;
}

Complex GaugeSpec::prefactor_log_derivative(Complex s) const {
  Complex v = 0.0;
  for (const auto& p : prefactors) v += p.exponent / (s - p.location);
  return v;
}

Complex GaugeSpec::prefactor_log_second_derivative(Complex s) const {
  Complex v = 0.0;
  for (const auto& p : prefactors) v -= p.exponent / ((s - p.location) * (s - p.location));
  return v;
}

GaugeSpec gauge_from_residues(const PotentialFamily& family) {
  GaugeSpec g;
  const auto native = family.native_chart();
  g.chart = engine::chart_spec(native);
  const double m = g.chart.measure_factor;
  g.variable_power = (family.kind() == FamilyKind::Circular) ? 1 : 2;

  // d log psi / ds = i m q(s); its polynomial part at infinity integrates to -G.
  const auto r_inf = engine::riccati_in_chart(family, engine::infinity_chart(family));
  const auto branch = engine::select_physical_branch(engine::infinity_candidates(r_inf), family,
                                                     engine::BranchLocation::infinity());
  const auto ex = engine::infinity_expansion(r_inf, branch);
  std::vector<Complex> gc(ex.order + 2, 0.0);
  for (int k = 0; k <= ex.order; ++k) {
    const Complex c = -kI * m * ex.momentum[-k] / double(k + 1);
    gc[k + 1] = Complex(c.real(), std::abs(c.imag()) < 1e-12 * std::max(1.0, std::abs(c)) ? 0.0 : c.imag());
  }
  g.gauge_polynomial = Polynomial(gc);

  const auto r_native = engine::riccati_in_chart(family, native);
  const auto interval = family.physical_interval();
  for (const double pole : family.fixed_poles()) {
    const auto sel = engine::select_physical_branch(engine::fixed_pole_residues(r_native, pole), family,
                                                    engine::BranchLocation::at(pole));
    g.prefactors.push_back({pole, (kI * m * sel.leading_coefficient).real(), pole >= interval.hi});
  }
  return g;
}

std::vector<Sector> algebraic_sectors(const PotentialFamily& family) {
  if (family.kind() != FamilyKind::Sextic) return {Sector::Chart};
  const double n = (engine::closed_form_condition_value(family) - 3.0) / 2.0;
  return {std::lround(n) % 2 == 0 ? Sector::Even : Sector::Odd};
}

RecursionMatrix recursion_matrix(const PotentialFamily& family, Sector sector) {
  const bool sextic = family.kind() == FamilyKind::Sextic;
  if (sextic && sector == Sector::Chart) sector = algebraic_sectors(family).front();
  if (!sextic && sector != Sector::Chart)
    throw Error(ErrorKind::InvalidInput, "parity sectors exist only for the sextic family");

  RecursionMatrix m;
  m.sector = sector;
  m.gauge = gauge_from_residues(family);
  m.sector_power = sector == Sector::Odd ? 1 : 0;
  const ThreeTerm t = action(family, m.gauge, m.sector_power);

  if (t.u1 == 0.0) throw Error(ErrorKind::QesConditionViolated, "QES condition violated: recursion has no truncation point");
  const double kstar = -t.u0 / t.u1;
  const int K = std::max(0L, std::lround(kstar));
  m.truncation_residual = t.upper(K);
  const double scale = std::abs(t.u0) + std::abs(t.u1) * (K + 1);
  if (kstar < -0.5 || std::abs(m.truncation_residual) > kTruncTol * std::max(1.0, scale)) {
    std::ostringstream os;
    os.precision(17);
    os << "QES condition violated: recursion does not truncate in the " << to_string(sector)
       << " sector (residual coefficient " << m.truncation_residual << " at degree " << K << ")";
    throw Error(ErrorKind::QesConditionViolated, os.str());
  }

  m.dimension = K + 1;
  m.entries = Eigen::MatrixXd::Zero(m.dimension, m.dimension);
  for (int k = 0; k < m.dimension; ++k) {
    if (k > 0) m.entries(k - 1, k) = t.lower(k);
    m.entries(k, k) = t.diag(k);
    if (k + 1 < m.dimension) m.entries(k + 1, k) = t.upper(k);
  }
  return m;
}

std::vector<double> algebraic_spectrum(const RecursionMatrix& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m.entries, false);
  std::vector<double> out;
  for (const auto& ev : es.eigenvalues()) {
    if (std::abs(ev.imag()) > kRealTol * std::max(1.0, std::abs(ev))) {
      std::ostringstream os;
      os << "non-real algebraic energy " << ev.real() << (ev.imag() < 0 ? " - " : " + ")
         << std::abs(ev.imag()) << "i";
      throw Error(ErrorKind::NonRealEnergy, os.str());
    }
    out.push_back(ev.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Polynomial AlgebraicState::census_polynomial() const {
  Polynomial c = gauge.variable_power == 2 ? Polynomial::in_square(poly) : poly;
  return sector_power ? Polynomial::monomial(sector_power) * c : c;
}

std::vector<AlgebraicState> algebraic_states(const RecursionMatrix& m, const PotentialFamily& family) {
  const auto energies = algebraic_spectrum(m);
  const int d = m.dimension;
  const double scale = std::max(1.0, m.entries.cwiseAbs().maxCoeff());
  std::vector<AlgebraicState> out;
  for (const double E : energies) {
    // Null vector of (M - E) via the SVD; exact eigenvectors of the small block.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.entries - E * Eigen::MatrixXd::Identity(d, d), Eigen::ComputeFullV);
    const Eigen::VectorXd v = svd.matrixV().col(d - 1);
    std::vector<Complex> c(d);
    for (int k = 0; k < d; ++k) c[k] = v(k) / v(d - 1);
    AlgebraicState s;
    s.energy = E;
    s.poly = Polynomial(c);
    s.sector = m.sector;
    s.gauge = m.gauge;
    s.family = family;
    s.sector_power = m.sector_power;
    s.n_label = family.kind() == FamilyKind::Sextic ? 2 * (d - 1) + m.sector_power : d - 1;
    s.multiplicity = static_cast<int>(std::count_if(energies.begin(), energies.end(), [&](double e) {
      return std::abs(e - E) <= 1e-8 * scale;
    }));
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<AlgebraicState> algebraic_states(const PotentialFamily& family) {
  std::vector<AlgebraicState> out;
  for (const Sector s : algebraic_sectors(family)) {
    auto part = algebraic_states(recursion_matrix(family, s), family);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.energy < b.energy; });
  return out;
}

Jet eigenfunction_jet(const AlgebraicState& state, Complex x) {
  const auto& f = state.family;
  const Complex s = f.chart_coordinate(x), s1 = f.chart_jacobian(x), s2 = f.chart_second_derivative(x);
  const auto& g = state.gauge;
  const Polynomial C = state.census_polynomial();
  const Polynomial dC = C.derivative(), ddC = dC.derivative();
  const Polynomial dG = g.gauge_polynomial.derivative(), ddG = dG.derivative();

  const Complex F = g.prefactor(s) * std::exp(-g.gauge_polynomial(s));
  const Complex phi1 = g.prefactor_log_derivative(s) - dG(s);
  const Complex phi2 = g.prefactor_log_second_derivative(s) - ddG(s);
  const Complex c0 = C(s), c1 = dC(s), c2 = ddC(s);

  const Complex u = F * c0;
  const Complex us = F * (phi1 * c0 + c1);
  const Complex uss = F * ((phi2 + phi1 * phi1) * c0 + 2.0 * phi1 * c1 + c2);
  return {u, us * s1, uss * s1 * s1 + us * s2};
}

Evaluator eigenfunction(const AlgebraicState& state) {
  return [state](Complex x) { return eigenfunction_jet(state, x).value; };
}

std::vector<double> residual_sample_points(const PotentialFamily& family, int count) {
  double lo = -4.0, hi = 4.0;
  switch (family.kind()) {
    case FamilyKind::Sextic: break;
    case FamilyKind::RadialSextic:
    case FamilyKind::Hyperbolic: lo = 0.0; break;
    case FamilyKind::Circular: lo = 0.0, hi = std::numbers::pi / 2; break;
  }
  std::vector<double> xs(count);
  for (int i = 0; i < count; ++i) xs[i] = lo + (hi - lo) * (i + 0.5) / count;
  return xs;
}

double schrodinger_residual(const AlgebraicState& state, const std::vector<double>& xs) {
  double worst = 0.0, peak = 0.0;
  for (const double x : xs) {
    const Jet j = eigenfunction_jet(state, x);
    worst = std::max(worst, std::abs(-j.second + (state.family.potential(x) - state.energy) * j.value));
    peak = std::max(peak, std::abs(j.value));
  }
  return worst / peak;
}

}  // namespace qhjqes::spectra
