#include "qhjqes/series/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "qhjqes/error.hpp"

namespace qhjqes::series {

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorKind::InvalidInput, "polynomial coefficient is not finite");
    }
  }
  trim();
}

void Polynomial::trim() {
  while (coeffs_.size() > 1 && coeffs_.back() == Complex{}) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(Complex{});
}

Polynomial Polynomial::monomial(int degree, Complex c) {
  std::vector<Complex> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(std::span<const Complex> roots) {
  Polynomial p = constant(1.0);
  for (const auto& r : roots) p = p * Polynomial({-r, 1.0});
  return p;
}

Polynomial Polynomial::in_square(const Polynomial& q) {
  std::vector<Complex> v(2 * q.coeffs_.size() - 1);
  for (std::size_t k = 0; k < q.coeffs_.size(); ++k) v[2 * k] = q.coeffs_[k];
  return Polynomial(std::move(v));
}

bool Polynomial::is_zero() const noexcept {
  return coeffs_.size() == 1 && coeffs_[0] == Complex{};
}

double Polynomial::norm_inf() const noexcept {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::pair<Complex, Complex> Polynomial::eval_with_derivative(Complex z) const {
  Complex p{}, dp{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

Polynomial Polynomial::derivative() const {
  if (degree() == 0) return Polynomial{};
  std::vector<Complex> v(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) v[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) throw Error(ErrorKind::InvalidInput, "zero polynomial has no monic form");
  return (1.0 / leading()) * *this;
}

Polynomial Polynomial::shifted(Complex shift) const {
  // Repeated synthetic division.
  std::vector<Complex> c = coeffs_;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j > i; --j) c[j - 1] += shift * c[j];
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::reversed() const {
  std::vector<Complex> c(coeffs_.rbegin(), coeffs_.rend());
  return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Complex> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) v[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) v[k] += b.coeffs_[k];
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  std::vector<Complex> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(v));
}

Polynomial operator*(Complex s, const Polynomial& p) {
  std::vector<Complex> v = p.coeffs_;
  for (auto& c : v) c *= s;
  return Polynomial(std::move(v));
}

}  // namespace qhjqes::series
