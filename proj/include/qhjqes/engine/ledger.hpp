#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qhjqes/engine/matching.hpp"

namespace qhjqes::engine {

/// One itemized term of the quantization ledger, in units of hbar:
/// value = (1/2pi) * (closed integral of m q ds around the source).
struct LedgerContribution {
  std::string source;  // "infinity", "fixed pole", "moving poles"
  std::optional<Complex> location;
  Complex residue;     // residue of q (fixed poles) or u^1 coefficient (infinity)
  double value;
};

struct FixedPoleEntry {
  Complex location;
  BranchPair candidates;
  BranchCandidate selected;
  double contribution;  // Re(i m r)
};

struct SolvedCondition {
  double lhs_value;
  std::string rhs_form;  // "3+2n" or "M=n"
  int n;
};

/// Residue bookkeeping equating the large-contour integral of the chart
/// momentum with its enclosed poles:
///
///   i m a_1 = sum_fixed i m r_fixed + multiplicity * n
///
/// where a_1 is the u^1 coefficient of the physical infinity expansion.
struct QuantizationLedger {
  PotentialFamily family;
  BranchPair infinity_candidates;
  BranchCandidate infinity_branch;
  InfinityExpansion expansion;
  Complex infinity_coefficient;  // a_1
  double infinity_value;         // Re(i m a_1)
  std::vector<FixedPoleEntry> fixed;
  double fixed_total;
  int moving_multiplicity;
  double moving_count;  // infinity_value - fixed_total
  SolvedCondition condition;
  double balance_residual;
  std::vector<LedgerContribution> contributions;
};

QuantizationLedger quantization_ledger(const PotentialFamily& family);

/// Chart used for the expansion at infinity (inversion for the x-plane families).
ChartKind infinity_chart(const PotentialFamily& family);

/// Closed-form QES quantity: (beta^2/(4 gamma) - alpha)/sqrt(gamma) for the
/// sextic, M otherwise.
double closed_form_condition_value(const PotentialFamily& family);

struct SexticTemplate {
  double a = 1.0;
  double b = 0.0;
};
struct RadialTemplate {
  double S = 1.0;
  double a = 1.0;
  double b = 0.0;
};
struct CircularTemplate {
  double S1 = 1.0;
  double S2 = 1.0;
  double q1 = 1.0;
};
struct HyperbolicTemplate {
  double S1 = 1.0;
  double S2 = 1.0;
  double q1 = 1.0;
};
using FamilyTemplate = std::variant<SexticTemplate, RadialTemplate, CircularTemplate, HyperbolicTemplate>;

/// Family instance satisfying the QES condition with parameter n: the sextic
/// takes gamma = a^2, beta = 2ab, alpha = b^2 - a(3+2n); the others take M = n.
PotentialFamily qes_parameterize(const FamilyTemplate& tmpl, int n);

}  // namespace qhjqes::engine
