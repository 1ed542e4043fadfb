#pragma once

#include <array>
#include <optional>
#include <string>

#include "qhjqes/engine/riccati.hpp"

namespace qhjqes::engine {

/// Where a branch choice is made: the point at infinity of the chart, or a
/// finite fixed pole.
struct BranchLocation {
  std::optional<Complex> pole;  // empty means infinity

  static BranchLocation infinity() { return {}; }
  static BranchLocation at(Complex p) { return {p}; }
  bool is_infinity() const { return !pole.has_value(); }
};

/// One root of a leading-order quadratic.
struct BranchCandidate {
  std::string label;
  /// Leading coefficient of q at infinity (q ~ c s^order), or the residue of
  /// q at a fixed pole (order = -1).
  Complex leading_coefficient;
  int order = 0;
  BranchLocation location;
  double measure_factor = 1.0;
  /// Set by select_physical_branch: psi decays at infinity / vanishes at the pole.
  bool decay_flag = false;

  /// Real part of the local exponent mu in psi ~ (s - s0)^mu at a fixed pole,
  /// or of the leading gauge exponent coefficient i*m*c/(order+1) at infinity.
  double local_exponent() const;
};

using BranchPair = std::array<BranchCandidate, 2>;

/// The two square roots of the leading rhs coefficient at infinity.
BranchPair infinity_candidates(const RiccatiData& r);

struct InfinityExpansion {
  /// q as a Laurent series in the local variable u at infinity (u = y for the
  /// inversion chart, u = 1/s otherwise).
  LaurentSeries momentum;
  /// q ~ c u^-order.
  int order = 0;
  /// Lowest power of u carrying E in the matched equation.
  int energy_entry_power = 0;
  /// Power of u at which the coefficient of u^k is fixed: k - order.
  int power_fixing(int k) const { return k - order; }
};

/// Recursive matching of powers of u in the Riccati equation at infinity,
/// starting from the branch's leading coefficient. `depth` coefficients are
/// computed (default: rhs pole order + 3). Every matched power is re-checked
/// against the equation; a residual above 1e-10 is a matching failure.
InfinityExpansion infinity_expansion(const RiccatiData& r, const BranchCandidate& branch,
                                     int depth = 0);

/// Roots of the residue quadratic r^2 + (h_{-1} - W(s0)) r - R_{-2} = 0 at a
/// fixed double pole of the rhs.
BranchPair fixed_pole_residues(const RiccatiData& r, Complex pole);

/// Physical branch: at infinity the candidate whose gauge exp(i m c s^(L+1)/(L+1))
/// decays along the positive real axis; at a fixed pole the candidate with
/// the larger local exponent, which must be positive (psi -> 0).
BranchCandidate select_physical_branch(const BranchPair& pair, const PotentialFamily& family,
                                       const BranchLocation& location);

}  // namespace qhjqes::engine
