#include "qhjqes/engine/ledger.hpp"

#include <cmath>

#include "qhjqes/error.hpp"

namespace qhjqes::engine {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kLedgerTol = 1e-10;

}  // namespace

ChartKind infinity_chart(const PotentialFamily& family) {
  // The x-plane families use the inversion y = 1/x directly.
  return family.native_chart() == ChartKind::Identity ? ChartKind::Inversion : family.native_chart();
}

double closed_form_condition_value(const PotentialFamily& family) {
  switch (family.kind()) {
    case FamilyKind::Sextic: {
      const auto& s = family.as<Sextic>();
      return (s.beta * s.beta / (4.0 * s.gamma) - s.alpha) / std::sqrt(s.gamma);
    }
    case FamilyKind::RadialSextic: return family.as<RadialSextic>().M;
    case FamilyKind::Circular: return family.as<Circular>().M;
    case FamilyKind::Hyperbolic: return family.as<Hyperbolic>().M;
  }
  return 0.0;
}

QuantizationLedger quantization_ledger(const PotentialFamily& family) {
  const double m = chart_spec(family.native_chart()).measure_factor;

  const auto r_inf = riccati_in_chart(family, infinity_chart(family));
  const auto candidates = infinity_candidates(r_inf);
  const auto branch = select_physical_branch(candidates, family, BranchLocation::infinity());
  const auto expansion = infinity_expansion(r_inf, branch);

  if (expansion.power_fixing(1) >= expansion.energy_entry_power) {
    throw Error(ErrorKind::MatchingFailure,
                "matching failure: energy enters before the u^1 coefficient is fixed");
  }
  const Complex a1 = expansion.momentum[1];
  const Complex inf_val = kI * m * a1;
  if (std::abs(inf_val.imag()) > kLedgerTol * std::max(1.0, std::abs(inf_val))) {
    throw Error(ErrorKind::NonQesParameterization,
                "non-QES parameterization: infinity contribution is not real");
  }

  QuantizationLedger L{family, candidates, branch, expansion, a1, inf_val.real(), {}, 0.0,
                       family.moving_multiplicity(), 0.0, {}, 0.0, {}};
  L.contributions.push_back({"infinity", std::nullopt, a1, L.infinity_value});

  const auto r_native = riccati_in_chart(family, family.native_chart());
  for (const double pole : family.fixed_poles()) {
    const auto pair = fixed_pole_residues(r_native, pole);
    const auto sel = select_physical_branch(pair, family, BranchLocation::at(pole));
    const double contribution = (kI * m * sel.leading_coefficient).real();
    L.fixed.push_back({pole, pair, sel, contribution});
    L.fixed_total += contribution;
    L.contributions.push_back({"fixed pole", Complex(pole), sel.leading_coefficient, contribution});
  }

  L.moving_count = L.infinity_value - L.fixed_total;
  const double n_real = L.moving_count / L.moving_multiplicity;
  const double n_round = std::round(n_real);
  if (std::abs(n_real - n_round) > kLedgerTol * std::max(1.0, std::abs(n_real)) || n_round < 0.0) {
    throw Error(ErrorKind::NonQesParameterization,
                "non-QES parameterization: moving-pole count " + std::to_string(L.moving_count) +
                    " is not " + std::to_string(L.moving_multiplicity) + "n for integer n >= 0");
  }
  const int n = static_cast<int>(n_round);
  L.contributions.push_back({"moving poles", std::nullopt, Complex{}, double(L.moving_multiplicity * n)});
  L.balance_residual = std::abs(L.infinity_value - L.fixed_total - L.moving_multiplicity * n);

  const double lhs = closed_form_condition_value(family);
  if (family.kind() == FamilyKind::Sextic) {
    L.condition = {lhs, "3+2n", n};
    if (std::abs(lhs - (3.0 + 2.0 * n)) > kLedgerTol * std::max(1.0, std::abs(lhs))) {
      throw Error(ErrorKind::NonQesParameterization,
                  "non-QES parameterization: matcher and closed form disagree");
    }
  } else {
    L.condition = {lhs, "M=n", n};
    if (static_cast<int>(lhs) != n) {
      throw Error(ErrorKind::NonQesParameterization,
                  "non-QES parameterization: ledger gives n = " + std::to_string(n) +
                      " but M = " + std::to_string(static_cast<int>(lhs)));
    }
  }
  return L;
}

PotentialFamily qes_parameterize(const FamilyTemplate& tmpl, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidInput, "qes_parameterize requires n >= 0");
  if (const auto* s = std::get_if<SexticTemplate>(&tmpl)) {
    if (!(s->a > 0.0)) throw Error(ErrorKind::InvalidInput, "sextic template requires a > 0");
    return PotentialFamily(Sextic{s->b * s->b - s->a * (3.0 + 2.0 * n), 2.0 * s->a * s->b, s->a * s->a});
  }
  if (const auto* r = std::get_if<RadialTemplate>(&tmpl)) return PotentialFamily(RadialSextic{r->S, r->a, r->b, n});
  if (const auto* c = std::get_if<CircularTemplate>(&tmpl)) return PotentialFamily(Circular{c->S1, c->S2, c->q1, n});
  const auto& h = std::get<HyperbolicTemplate>(tmpl);
  return PotentialFamily(Hyperbolic{h.S1, h.S2, h.q1, n});
}

}  // namespace qhjqes::engine
