#pragma once

#include <vector>

#include "qhjqes/series/polynomial.hpp"

namespace qhjqes::series {

struct Root {
  Complex value;
  int multiplicity = 1;
};

struct RootOptions {
  int max_iterations = 500;
  /// Roots closer than this are merged into one multiple root.
  double cluster_radius = 1e-7;
  /// Backward-error bound |p(r)| <= tol * max(sum_k |c_k| |r|^k, ||p||_inf).
  double backward_tol = 1e-10;
};

/// Roots by Aberth-Ehrlich iteration from deterministic starting points on
/// the circle of radius 1 + max|c_k / c_lead|. Output sorted by (re, im);
/// multiplicities sum to the degree.
std::vector<Root> poly_roots(const Polynomial& p, const RootOptions& opts = {});

}  // namespace qhjqes::series
