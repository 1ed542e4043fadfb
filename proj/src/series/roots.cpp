#include "qhjqes/series/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qhjqes/error.hpp"

namespace qhjqes::series {

namespace {

double horner_abs(const Polynomial& p, Complex z) {
  double acc = 0.0;
  const double r = std::abs(z);
  for (int k = p.degree(); k >= 0; --k) acc = acc * r + std::abs(p[k]);
  return acc;
}

// Floor at ||p|| so that roots at or near 0 of p with p(0) = 0 are judged absolutely.
double backward_scale(const Polynomial& p, Complex z) { return std::max(horner_abs(p, z), p.norm_inf()); }

std::vector<Complex> aberth(const Polynomial& p, const RootOptions& opts) {
  const int n = p.degree();
  const Complex lead = p.leading();
  double bound = 0.0;
  for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(p[k] / lead));
  const double radius = 1.0 + bound;

  // Angle offset breaks the symmetry of real-coefficient polynomials.
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    z[k] = std::polar(radius, 2.0 * std::numbers::pi * k / n + 0.4);
  }

  std::vector<bool> done(static_cast<std::size_t>(n), false);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    bool all_done = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      const auto [pv, dpv] = p.eval_with_derivative(z[i]);
      if (std::abs(pv) <= 1e-16 * horner_abs(p, z[i])) {
        done[i] = true;
        continue;
      }
      const Complex ratio = pv / dpv;
      Complex sum{};
      for (int j = 0; j < n; ++j) {
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      }
      const Complex step = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
        done[i] = true;
        continue;
      }
      z[i] -= step;
      if (std::abs(step) <= 4e-16 * std::max(1.0, std::abs(z[i]))) {
        done[i] = true;
      } else {
        all_done = false;
      }
    }
    if (all_done) break;
  }
  return z;
}

}  // namespace

std::vector<Root> poly_roots(const Polynomial& p, const RootOptions& opts) {
  if (p.is_zero()) throw Error(ErrorKind::InvalidInput, "poly_roots: zero polynomial");
  if (p.degree() < 1) throw Error(ErrorKind::InvalidInput, "poly_roots: degree must be >= 1");

  const std::vector<Complex> raw = aberth(p, opts);

  // Single-linkage clustering for multiplicity detection.
  const std::size_t n = raw.size();
  std::vector<int> label(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] >= 0) continue;
    label[i] = next;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < n; ++b) {
        if (label[b] < 0 && std::abs(raw[a] - raw[b]) < opts.cluster_radius) {
          label[b] = next;
          stack.push_back(b);
        }
      }
    }
    ++next;
  }

  std::vector<Root> roots;
  for (int c = 0; c < next; ++c) {
    Complex sum{};
    int count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (label[i] == c) {
        sum += raw[i];
        ++count;
      }
    }
    roots.push_back({sum / static_cast<double>(count), count});
  }

  for (const auto& r : roots) {
    if (std::abs(p(r.value)) > opts.backward_tol * backward_scale(p, r.value)) {
      throw Error(ErrorKind::NonConvergence, "poly_roots: backward error above tolerance");
    }
  }

  // Real parts are compared on a 1e-10 grid so that the two members of a
  // conjugate pair order by imaginary part despite rounding noise.
  const auto key = [](const Root& r) { return std::llround(r.value.real() * 1e10); };
  std::sort(roots.begin(), roots.end(), [&](const Root& a, const Root& b) {
    if (key(a) != key(b)) return key(a) < key(b);
    return a.value.imag() < b.value.imag();
  });
  return roots;
}

}  // namespace qhjqes::series
