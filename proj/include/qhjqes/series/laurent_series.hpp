#pragma once

#include <vector>

#include "qhjqes/series/polynomial.hpp"

namespace qhjqes::series {

/// Truncated Laurent series sum_{k=kmin}^{kmax} c_k u^k.
///
/// The window is explicit: every exponent below `kmin()` is exactly zero and
/// every exponent above `kmax()` is unknown (truncated). Arithmetic tightens
/// the window so that only coefficients that are fully determined by the
/// operands are ever reported.
class LaurentSeries {
 public:
  /// Series with all coefficients zero on [kmin, kmax].
  LaurentSeries(int kmin, int kmax);
  LaurentSeries(int kmin, int kmax, std::vector<Complex> coeffs);

  static LaurentSeries monomial(int exponent, Complex c, int kmax);
  /// Polynomial p(u) viewed as a series known through u^kmax.
  static LaurentSeries from_polynomial(const Polynomial& p, int kmax);

  int kmin() const noexcept { return kmin_; }
  int kmax() const noexcept { return kmax_; }
  bool contains(int k) const noexcept { return k >= kmin_ && k <= kmax_; }

  /// Coefficient of u^k; zero below the window, throws above it.
  Complex operator[](int k) const;
  void set(int k, Complex c);

  /// Lowest exponent whose coefficient exceeds `tol` in magnitude, or
  /// kmax()+1 when every known coefficient is (numerically) zero.
  int valuation(double tol = 0.0) const;

  /// Evaluates the truncated sum at u != 0.
  Complex operator()(Complex u) const;

  LaurentSeries truncated(int new_kmax) const;
  LaurentSeries shifted(int by) const;  // multiply by u^by
  LaurentSeries scaled(Complex s) const;

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);

 private:
  int kmin_;
  int kmax_;
  std::vector<Complex> coeffs_;
};

/// Cauchy product on the mutually valid window.
LaurentSeries series_product(const LaurentSeries& a, const LaurentSeries& b);

/// Term-wise derivative; the window shifts down by one.
LaurentSeries series_derivative(const LaurentSeries& a);

/// Coefficient of u^-1. Throws if -1 lies outside the window.
Complex residue(const LaurentSeries& a);

/// Quotient a / b, where b has a nonzero coefficient at its lowest exponent.
LaurentSeries series_quotient(const LaurentSeries& a, const LaurentSeries& b);

}  // namespace qhjqes::series
