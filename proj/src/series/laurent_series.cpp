#include "qhjqes/series/laurent_series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qhjqes/error.hpp"

namespace qhjqes::series {

namespace {

void require_window(int kmin, int kmax) {
  if (kmax < kmin) {
    throw Error(ErrorKind::InsufficientDepth,
                "insufficient truncation depth: empty window [" + std::to_string(kmin) + ", " +
                    std::to_string(kmax) + "]");
  }
}

}  // namespace

LaurentSeries::LaurentSeries(int kmin, int kmax) : kmin_(kmin), kmax_(kmax) {
  require_window(kmin, kmax);
  coeffs_.assign(static_cast<std::size_t>(kmax - kmin + 1), Complex{});
}

LaurentSeries::LaurentSeries(int kmin, int kmax, std::vector<Complex> coeffs)
    : kmin_(kmin), kmax_(kmax), coeffs_(std::move(coeffs)) {
  require_window(kmin, kmax);
  if (coeffs_.size() != static_cast<std::size_t>(kmax - kmin + 1)) {
    throw Error(ErrorKind::InvalidInput, "coefficient count does not match window");
  }
  for (const auto& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorKind::InvalidInput, "Laurent coefficient is not finite");
    }
  }
}

LaurentSeries LaurentSeries::monomial(int exponent, Complex c, int kmax) {
  LaurentSeries s(exponent, kmax);
  s.set(exponent, c);
  return s;
}

LaurentSeries LaurentSeries::from_polynomial(const Polynomial& p, int kmax) {
  LaurentSeries s(0, kmax);
  for (int k = 0; k <= std::min(kmax, p.degree()); ++k) s.set(k, p[k]);
  return s;
}

Complex LaurentSeries::operator[](int k) const {
  if (k < kmin_) return Complex{};
  if (k > kmax_) {
    throw Error(ErrorKind::InsufficientDepth,
                "insufficient truncation depth: exponent " + std::to_string(k) +
                    " beyond window end " + std::to_string(kmax_));
  }
  return coeffs_[static_cast<std::size_t>(k - kmin_)];
}

void LaurentSeries::set(int k, Complex c) {
  if (!contains(k)) throw Error(ErrorKind::InvalidInput, "exponent outside series window");
  coeffs_[static_cast<std::size_t>(k - kmin_)] = c;
}

int LaurentSeries::valuation(double tol) const {
  for (int k = kmin_; k <= kmax_; ++k) {
    if (std::abs((*this)[k]) > tol) return k;
  }
  return kmax_ + 1;
}

Complex LaurentSeries::operator()(Complex u) const {
  Complex acc{};
  for (int k = kmax_; k >= kmin_; --k) acc = acc * u + (*this)[k];
  return acc * std::pow(u, kmin_);
}

LaurentSeries LaurentSeries::truncated(int new_kmax) const {
  LaurentSeries s(kmin_, std::min(kmax_, new_kmax));
  for (int k = s.kmin_; k <= s.kmax_; ++k) s.set(k, (*this)[k]);
  return s;
}

LaurentSeries LaurentSeries::shifted(int by) const {
  return LaurentSeries(kmin_ + by, kmax_ + by, coeffs_);
}

LaurentSeries LaurentSeries::scaled(Complex s) const {
  auto c = coeffs_;
  for (auto& v : c) v *= s;
  return LaurentSeries(kmin_, kmax_, std::move(c));
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  LaurentSeries s(std::min(a.kmin_, b.kmin_), std::min(a.kmax_, b.kmax_));
  for (int k = s.kmin_; k <= s.kmax_; ++k) s.set(k, a[k] + b[k]);
  return s;
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
  return a + b.scaled(-1.0);
}

LaurentSeries series_product(const LaurentSeries& a, const LaurentSeries& b) {
  const int kmin = a.kmin() + b.kmin();
  const int kmax = std::min(a.kmax() + b.kmin(), b.kmax() + a.kmin());
  LaurentSeries s(kmin, kmax);
  for (int k = kmin; k <= kmax; ++k) {
    Complex acc{};
    for (int i = a.kmin(); i <= k - b.kmin(); ++i) acc += a[i] * b[k - i];
    s.set(k, acc);
  }
  return s;
}

LaurentSeries series_derivative(const LaurentSeries& a) {
  LaurentSeries s(a.kmin() - 1, a.kmax() - 1);
  for (int k = a.kmin(); k <= a.kmax(); ++k) s.set(k - 1, static_cast<double>(k) * a[k]);
  return s;
}

Complex residue(const LaurentSeries& a) {
  if (!a.contains(-1)) {
    throw Error(ErrorKind::InsufficientDepth, "residue: exponent -1 outside series window");
  }
  return a[-1];
}

LaurentSeries series_quotient(const LaurentSeries& a, const LaurentSeries& b) {
  const int vb = b.kmin();
  const Complex lead = b[vb];
  if (lead == Complex{}) {
    throw Error(ErrorKind::InvalidInput, "series_quotient: divisor has zero leading coefficient");
  }
  // Relative precision of the quotient is limited by both operands.
  const int depth = std::min(a.kmax() - a.kmin(), b.kmax() - b.kmin());
  const int kmin = a.kmin() - vb;
  LaurentSeries q(kmin, kmin + depth);
  for (int k = kmin; k <= kmin + depth; ++k) {
    Complex acc = a[k + vb];
    for (int j = kmin; j < k; ++j) acc -= q[j] * b[k - j + vb];
    q.set(k, acc / lead);
  }
  return q;
}

}  // namespace qhjqes::series
