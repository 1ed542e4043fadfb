#include "qhjqes/series/contour.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>

#include "qhjqes/error.hpp"

namespace qhjqes::series {

namespace {

constexpr Complex kI{0.0, 1.0};

Complex checked_eval(const ComplexFunction& f, Complex z) {
  const Complex v = f(z);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw Error(ErrorKind::PoleOnContour, "pole on contour: non-finite integrand at z = (" +
                                              std::to_string(z.real()) + ", " +
                                              std::to_string(z.imag()) + ")");
  }
  return v;
}

using Gauss = boost::math::quadrature::gauss<double, 20>;

}  // namespace

Complex contour_integral(const ComplexFunction& f, const CircleContour& c, int n_points) {
  if (!(c.radius > 0.0)) throw Error(ErrorKind::InvalidInput, "circle radius must be positive");
  if (n_points < 16) throw Error(ErrorKind::InvalidInput, "contour_integral needs n_points >= 16");
  Complex sum{};
  const double dtheta = 2.0 * std::numbers::pi / n_points;
  for (int k = 0; k < n_points; ++k) {
    const Complex w = std::polar(c.radius, k * dtheta);
    sum += checked_eval(f, c.center + w) * kI * w;
  }
  return sum * dtheta;
}

Complex contour_integral(const ComplexFunction& f, const StadiumContour& s, int panels_per_unit) {
  const double h = s.half_height;
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidInput, "stadium half-height must be positive");
  const double len = s.right.real() - s.left.real();
  if (len < 0.0) throw Error(ErrorKind::InvalidInput, "stadium segment must run left to right");
  const double y0 = s.left.imag();

  const auto panels_for = [&](double length) {
    return std::max(1, static_cast<int>(std::ceil(panels_per_unit * length / h)));
  };

  Complex total{};
  const auto add_piece = [&](auto path, auto tangent, double length) {
    const int panels = panels_for(length);
    const double width = 1.0 / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = (p + 0.5) * width;
      const auto g = [&](double x) {
        const double t = mid + 0.5 * width * x;
        return checked_eval(f, path(t)) * tangent(t);
      };
      total += Gauss::integrate(g) * (0.5 * width);
    }
  };

  const double xl = s.left.real();
  const double xr = s.right.real();
  // Bottom edge, left to right.
  if (len > 0.0) {
    add_piece([&](double t) { return Complex(xl + len * t, y0 - h); },
              [&](double) { return Complex(len, 0.0); }, len);
  }
  // Right cap from -pi/2 to pi/2.
  add_piece(
      [&](double t) { return Complex(xr, y0) + std::polar(h, std::numbers::pi * (t - 0.5)); },
      [&](double t) {
        return kI * std::numbers::pi * std::polar(h, std::numbers::pi * (t - 0.5));
      },
      std::numbers::pi * h);
  // Top edge, right to left.
  if (len > 0.0) {
    add_piece([&](double t) { return Complex(xr - len * t, y0 + h); },
              [&](double) { return Complex(-len, 0.0); }, len);
  }
  // Left cap from pi/2 to 3pi/2.
  add_piece(
      [&](double t) { return Complex(xl, y0) + std::polar(h, std::numbers::pi * (t + 0.5)); },
      [&](double t) {
        return kI * std::numbers::pi * std::polar(h, std::numbers::pi * (t + 0.5));
      },
      std::numbers::pi * h);
  return total;
}

}  // namespace qhjqes::series
