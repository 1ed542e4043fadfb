#pragma once

#include <functional>

#include "qhjqes/series/polynomial.hpp"

namespace qhjqes::series {

using ComplexFunction = std::function<Complex(Complex)>;

inline constexpr int kDefaultQuadraturePoints = 2048;

/// Counterclockwise circle.
struct CircleContour {
  Complex center;
  double radius;
};

/// Axis-aligned stadium: the set of points within `half_height` of the real
/// segment [left, right] + i*Im(left), traversed counterclockwise.
struct StadiumContour {
  Complex left;
  Complex right;
  double half_height;
};

/// Trapezoidal approximation of the closed integral of f dz over the circle.
/// Returns the raw integral; callers apply 1/(2*pi) or 1/(2*pi*i).
Complex contour_integral(const ComplexFunction& f, const CircleContour& c,
                         int n_points = kDefaultQuadraturePoints);

/// Composite Gauss-Legendre integral of f dz over the stadium boundary.
/// `panels_per_unit` panels are used per unit of half_height along each piece.
Complex contour_integral(const ComplexFunction& f, const StadiumContour& s,
                         int panels_per_unit = 4);

}  // namespace qhjqes::series
