#pragma once

#include <complex>
#include <span>
#include <vector>

namespace qhjqes::series {

using Complex = std::complex<double>;

/// Dense polynomial with complex coefficients in ascending degree order.
/// Trailing zero coefficients are stripped on construction, so `degree()`
/// is the true degree; the zero polynomial has a single zero coefficient.
class Polynomial {
 public:
  Polynomial() : coeffs_{Complex{}} {}
  explicit Polynomial(std::vector<Complex> coeffs);
  Polynomial(std::initializer_list<Complex> coeffs)
      : Polynomial(std::vector<Complex>(coeffs)) {}

  static Polynomial constant(Complex c) { return Polynomial({c}); }
  static Polynomial monomial(int degree, Complex c = 1.0);
  /// Monic polynomial with the given roots.
  static Polynomial from_roots(std::span<const Complex> roots);
  /// Builds p(x) = q(x^2) from the coefficients of q.
  static Polynomial in_square(const Polynomial& q);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept;
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  Complex operator[](int k) const {
    return (k >= 0 && k <= degree()) ? coeffs_[k] : Complex{};
  }
  Complex leading() const noexcept { return coeffs_.back(); }
  double norm_inf() const noexcept;

  Complex operator()(Complex z) const;
  /// Value and first derivative in one Horner pass.
  std::pair<Complex, Complex> eval_with_derivative(Complex z) const;

  Polynomial derivative() const;
  Polynomial monic() const;
  /// Taylor shift: returns r with r(u) = p(u + shift).
  Polynomial shifted(Complex shift) const;
  /// Coefficient reversal: x^deg * p(1/x).
  Polynomial reversed() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Complex s, const Polynomial& p);

 private:
  void trim();
  std::vector<Complex> coeffs_;
};

}  // namespace qhjqes::series
