#include "qhjqes/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qhjqes/engine/ledger.hpp"
#include "qhjqes/error.hpp"
#include "qhjqes/oracle/oracle.hpp"
#include "qhjqes/qmf/qmf.hpp"
#include "qhjqes/spectra/spectra.hpp"

namespace qhjqes::cli {

using engine::FamilyKind;
using series::Complex;

// ---------------------------------------------------------------- Report

json to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

void Report::close(const std::string& name, double m, double e, double tol) {
  add({name, std::abs(m - e) <= tol, m, e, tol, {}});
}

void Report::close(const std::string& name, Complex m, Complex e, double tol) {
  add({name, std::abs(m - e) <= tol, cli::to_json(m), cli::to_json(e), tol, {}});
}

void Report::bounded(const std::string& name, double m, double bound) {
  add({name, m <= bound, m, 0.0, bound, {}});
}

void Report::equal(const std::string& name, long long m, long long e) { add({name, m == e, m, e, 0, {}}); }

void Report::failed(const std::string& name, const std::string& message) {
  add({name, false, nullptr, nullptr, nullptr, message});
}

bool Report::passed() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

std::optional<std::string> Report::first_failure() const {
  for (const auto& c : checks_)
    if (!c.pass) return c.name;
  return std::nullopt;
}

json Report::to_json() const {
  json checks = json::array();
  for (const auto& c : checks_) {
    json j = {{"name", c.name}, {"pass", c.pass}, {"measured", c.measured}, {"expected", c.expected},
              {"tolerance", c.tolerance}};
    if (!c.message.empty()) j["message"] = c.message;
    checks.push_back(std::move(j));
  }
  const auto ff = first_failure();
  return {{"schema_version", kSchemaVersion},
          {"command", command_},
          {"inputs", inputs_},
          {"results", results_},
          {"checks", checks},
          {"status", passed() ? "pass" : "fail"},
          {"first_failure", ff ? json(*ff) : json(nullptr)}};
}

namespace {

// nlohmann prints shortest round-trip floats; reports use a fixed %.17g.
void emit(const json& j, int indent, std::string& out) {
  const std::string pad(indent + 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) { out += "{}"; return; }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(k).dump() + ": ";
        emit(v, indent + 2, out);
      }
      out += "\n" + std::string(indent, ' ') + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) { out += "[]"; return; }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        emit(j[i], indent + 2, out);
      }
      out += "\n" + std::string(indent, ' ') + "]";
      return;
    }
    case json::value_t::number_float: {
      const double d = j.get<double>();
      if (!std::isfinite(d)) { out += "null"; return; }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", d);
      out += buf;
      // keep floats recognisable as floats
      if (!std::strpbrk(buf, ".eEn")) out += ".0";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump(const json& j) {
  std::string out;
  emit(j, 0, out);
  return out + "\n";
}

namespace {

Outcome finish(Report rep) {
  const int code = rep.passed() ? kPass : kVerificationFailure;
  return {std::move(rep), code, std::nullopt};
}

json error_json(const Error& e) { return {{"kind", to_string(e.kind())}, {"message", e.what()}}; }

json candidate_json(const engine::BranchCandidate& c, bool selected) {
  return {{"label", c.label},
          {"leading_coefficient", to_json(c.leading_coefficient)},
          {"order", c.order},
          {"local_exponent", c.local_exponent()},
          {"decays", c.decay_flag},
          {"selected", selected}};
}

json pair_json(const engine::BranchPair& p, const engine::BranchCandidate& sel) {
  json a = json::array();
  for (const auto& c : p) a.push_back(candidate_json(c, c.leading_coefficient == sel.leading_coefficient));
  return a;
}

std::string tag(const std::string& name, int i) { return name + "[" + std::to_string(i) + "]"; }

// Ledger itemization and its checks; returns the ledger when it closes.
std::optional<engine::QuantizationLedger> ledger_section(Report& rep, const RunConfig& cfg) {
  json& res = rep.results();
  const double value = engine::closed_form_condition_value(cfg.family);
  res["condition_value"] = value;
  try {
    const auto L = engine::quantization_ledger(cfg.family);
    json ledger;
    ledger["infinity"] = {{"candidates", pair_json(L.infinity_candidates, L.infinity_branch)},
                          {"a1", to_json(L.infinity_coefficient)},
                          {"value", L.infinity_value}};
    json fixed = json::array();
    for (const auto& f : L.fixed)
      fixed.push_back({{"location", to_json(f.location)},
                       {"candidates", pair_json(f.candidates, f.selected)},
                       {"residue", to_json(f.selected.leading_coefficient)},
                       {"contribution", f.contribution}});
    ledger["fixed_poles"] = fixed;
    json items = json::array();
    for (const auto& c : L.contributions)
      items.push_back({{"source", c.source},
                       {"location", c.location ? to_json(*c.location) : json(nullptr)},
                       {"value", c.value}});
    ledger["contributions"] = items;
    ledger["moving_multiplicity"] = L.moving_multiplicity;
    ledger["moving_count"] = L.moving_count;
    ledger["balance_residual"] = L.balance_residual;
    res["ledger"] = ledger;
    res["condition"] = {{"lhs_value", L.condition.lhs_value}, {"rhs_form", L.condition.rhs_form},
                        {"n", L.condition.n}};

    rep.bounded("ledger_balance", L.balance_residual, 1e-10);
    if (cfg.family.kind() == FamilyKind::Sextic)
      rep.close("qes_condition", L.condition.lhs_value, 3.0 + 2.0 * L.condition.n,
                1e-10 * std::max(1.0, std::abs(value)));
    else
      rep.equal("qes_condition", std::lround(L.condition.lhs_value), L.condition.n);
    rep.add({"energy_enters_after_a1", L.expansion.power_fixing(1) < L.expansion.energy_entry_power,
             L.expansion.power_fixing(1), L.expansion.energy_entry_power, nullptr,
             "power fixing a1 must be below the power where E enters"});
    rep.add({"infinity_branch_decays", L.infinity_branch.local_exponent() < 0.0, L.infinity_branch.local_exponent(),
             "negative", nullptr, {}});
    for (std::size_t i = 0; i < L.fixed.size(); ++i)
      rep.add({tag("fixed_branch_regular", int(i)), L.fixed[i].selected.local_exponent() > 0.0,
               L.fixed[i].selected.local_exponent(), "positive", nullptr, {}});
    if (cfg.n) rep.equal("n_matches_config", L.condition.n, *cfg.n);
    return L;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidInput) throw;
    res["error"] = error_json(e);
    if (cfg.family.kind() == FamilyKind::Sextic) {
      const double nn = std::max(0.0, std::round((value - 3.0) / 2.0));
      Check c{"qes_condition", false, value, 3.0 + 2.0 * nn, 1e-10 * std::max(1.0, std::abs(value)),
              "condition value is not 3+2n for integer n >= 0: not QES for integer n"};
      rep.add(c);
    }
    rep.failed("ledger", e.what());
    return std::nullopt;
  }
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

oracle::RefineOptions refine_options(const RunConfig& cfg) {
  oracle::RefineOptions o;
  o.n_max = cfg.grid.N;
  return o;
}

// Matches algebraic energies against the oracle; appends checks.
void containment_section(Report& rep, const RunConfig& cfg, const std::vector<spectra::AlgebraicState>& states) {
  json& res = rep.results();
  int k = 1;
  for (const auto& s : states) k = std::max(k, s.n_label + 1);
  const double tol = cfg.tolerances.oracle_tol;
  oracle::OracleSpectrum o;
  try {
    o = oracle::refine(cfg.family, cfg.oracle_domain(), k, tol / 4, refine_options(cfg));
    rep.add({"oracle_converged", true, o.grid.N, nullptr, tol / 4, {}});
  } catch (const oracle::NonConvergenceError& e) {
    o = e.best();
    rep.failed("oracle_converged", e.what());
  }
  res["oracle"] = {{"energies", o.energies},
                   {"error_estimates", o.error_estimates},
                   {"N", o.grid.N},
                   {"x_min", o.grid.x_min},
                   {"x_max", o.grid.x_max},
                   {"domain_change", o.domain_change}};
  json table = json::array();
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double E = states[i].energy;
    std::size_t best = 0;
    for (std::size_t j = 1; j < o.energies.size(); ++j)
      if (std::abs(o.energies[j] - E) < std::abs(o.energies[best] - E)) best = j;
    const double diff = o.energies.empty() ? INFINITY : std::abs(o.energies[best] - E);
    table.push_back({{"algebraic", E},
                     {"oracle", o.energies.empty() ? json(nullptr) : json(o.energies[best])},
                     {"oracle_level", best},
                     {"abs_diff", diff},
                     {"error_estimate", o.error_estimates.empty() ? json(nullptr) : json(o.error_estimates[best])}});
    rep.bounded(tag("oracle_contains_energy", int(i)), diff, tol);
  }
  res["energies"] = table;
}

json pole_json(const qmf::PoleReport& p) {
  return {{"location", to_json(p.location)},
          {"multiplicity", p.multiplicity},
          {"kind", qmf::to_string(p.kind)},
          {"axis", qmf::to_string(p.axis)},
          {"residue", to_json(p.measured_residue)},
          {"expected_residue", to_json(p.expected_residue)}};
}

// Census of one state; appends checks with the `prefix`.
qmf::CensusReport census_section(Report& rep, const RunConfig& cfg, const spectra::AlgebraicState& s,
                                 const std::string& prefix, json& out) {
  const auto& tol = cfg.tolerances;
  const auto c = qmf::zero_census(s);
  const int mult = s.family.moving_multiplicity();
  json zeros = json::array(), fixed = json::array();
  for (std::size_t i = 0; i < c.moving.size(); ++i) {
    zeros.push_back(pole_json(c.moving[i]));
    rep.close(prefix + tag("moving_residue", int(i)), c.moving[i].measured_residue, c.moving[i].expected_residue,
              tol.residue_tol);
  }
  for (std::size_t i = 0; i < c.fixed.size(); ++i) {
    fixed.push_back(pole_json(c.fixed[i]));
    rep.close(prefix + tag("fixed_residue", int(i)), c.fixed[i].measured_residue, c.fixed[i].expected_residue,
              tol.residue_tol);
  }
  out["energy"] = s.energy;
  out["n_label"] = s.n_label;
  out["sector"] = spectra::to_string(s.sector);
  out["zeros"] = zeros;
  out["fixed_poles"] = fixed;
  out["n_real"] = c.n_real;
  out["n_complex"] = c.n_complex;
  out["total"] = c.total;
  out["quantization_value"] = c.quantization_value;
  out["global_count"] = c.global_count;
  out["argument_count"] = c.argument_count;
  out["warnings"] = c.warnings;

  rep.close(prefix + "quantization_value", c.quantization_value, c.n_real, tol.contour_tol);
  rep.close(prefix + "global_count", c.global_count, double(mult * s.n_label), tol.contour_tol);
  rep.close(prefix + "count_routes_agree", c.global_count, c.argument_count, 1e-10);
  rep.equal(prefix + "zero_total", c.total, mult * s.n_label);
  return c;
}

void infinity_section(Report& rep, const spectra::AlgebraicState& s, const std::string& prefix, json& out) {
  const auto k = s.family.kind();
  if (k != FamilyKind::Sextic && k != FamilyKind::RadialSextic) return;
  const double root_gamma =
      k == FamilyKind::Sextic ? std::sqrt(s.family.as<engine::Sextic>().gamma) : s.family.as<engine::RadialSextic>().a;
  try {
    const auto o = qmf::infinity_order_check(qmf::qmf(s));
    out["infinity_order"] = {{"exponent", o.exponent}, {"coefficient", to_json(o.coefficient)},
                             {"fit_residual", o.fit_residual}};
    rep.close(prefix + "infinity_exponent", o.exponent, 3.0, 0.01);
    rep.close(prefix + "infinity_coefficient", o.coefficient, Complex(0.0, root_gamma), 1e-3 * root_gamma);
  } catch (const Error& e) {
    rep.failed(prefix + "infinity_exponent", e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------- commands

Outcome cmd_derive(const RunConfig& cfg) {
  Report rep("derive", cfg.echo);
  rep.results()["family"] = cfg.family.name();
  ledger_section(rep, cfg);
  return finish(std::move(rep));
}

Outcome cmd_spectrum(const RunConfig& cfg, bool sanity) {
  json inputs = cfg.echo;
  if (sanity) inputs["sanity"] = true;
  Report rep("spectrum", inputs);
  json& res = rep.results();
  const double tol = cfg.tolerances.oracle_tol;

  if (sanity) {
    const auto v = [](double x) { return x * x; };
    oracle::OracleSpectrum o;
    try {
      o = oracle::refine(v, oracle::Domain{-10.0, 10.0}, 3, tol / 4, refine_options(cfg));
    } catch (const oracle::NonConvergenceError& e) {
      o = e.best();
      rep.failed("oracle_converged", e.what());
    }
    res["potential"] = "x^2";
    json table = json::array();
    for (int i = 0; i < int(o.energies.size()); ++i) {
      const double exact = 2 * i + 1;
      table.push_back({{"exact", exact}, {"oracle", o.energies[i]}, {"abs_diff", std::abs(o.energies[i] - exact)}});
      rep.close(tag("harmonic_level", i), o.energies[i], exact, tol);
    }
    res["energies"] = table;
    return finish(std::move(rep));
  }

  res["family"] = cfg.family.name();
  std::vector<spectra::AlgebraicState> states;
  try {
    states = spectra::algebraic_states(cfg.family);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidInput) throw;
    res["error"] = error_json(e);
    rep.failed("algebraic_spectrum", e.what());
    return finish(std::move(rep));
  }
  containment_section(rep, cfg, states);
  return finish(std::move(rep));
}

Outcome cmd_poles(const RunConfig& cfg, int level) {
  json inputs = cfg.echo;
  inputs["level"] = level;
  Report rep("poles", inputs);
  json& res = rep.results();
  res["family"] = cfg.family.name();
  std::vector<spectra::AlgebraicState> states;
  try {
    states = spectra::algebraic_states(cfg.family);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidInput) throw;
    res["error"] = error_json(e);
    rep.failed("algebraic_spectrum", e.what());
    return finish(std::move(rep));
  }
  if (level < 0 || level >= int(states.size()))
    throw Error(ErrorKind::InvalidInput, "--level " + std::to_string(level) + " out of range: family has " +
                                             std::to_string(states.size()) + " algebraic states");
  json state;
  std::ostringstream csv;
  csv << "re_z,im_z,kind,re_residue,im_residue\n";
  try {
    const auto c = census_section(rep, cfg, states[level], "", state);
    for (const auto* list : {&c.moving, &c.fixed})
      for (const auto& p : *list)
        csv << csv_number(p.location.real()) << ',' << csv_number(p.location.imag()) << ',' << qmf::to_string(p.kind)
            << ',' << csv_number(p.measured_residue.real()) << ',' << csv_number(p.measured_residue.imag()) << '\n';
  } catch (const Error& e) {
    res["error"] = error_json(e);
    rep.failed("zero_census", e.what());
  }
  res["state"] = state;
  Outcome out = finish(std::move(rep));
  out.csv = csv.str();
  return out;
}

Outcome cmd_verify(const RunConfig& cfg) {
  Report rep("verify", cfg.echo);
  json& res = rep.results();
  res["family"] = cfg.family.name();

  // Truncation first: everything downstream needs the algebraic block.
  std::vector<spectra::RecursionMatrix> blocks;
  bool truncates = true;
  for (const auto sector : spectra::algebraic_sectors(cfg.family)) {
    try {
      blocks.push_back(spectra::recursion_matrix(cfg.family, sector));
      rep.bounded(std::string("recursion_truncation[") + spectra::to_string(sector) + "]",
                  std::abs(blocks.back().truncation_residual), 1e-9);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::InvalidInput) throw;
      rep.failed(std::string("recursion_truncation[") + spectra::to_string(sector) + "]", e.what());
      truncates = false;
    }
  }

  ledger_section(rep, cfg);
  if (!truncates) return finish(std::move(rep));

  std::vector<spectra::AlgebraicState> states;
  try {
    for (const auto& b : blocks) {
      auto part = spectra::algebraic_states(b, cfg.family);
      states.insert(states.end(), part.begin(), part.end());
    }
    std::sort(states.begin(), states.end(), [](const auto& a, const auto& b) { return a.energy < b.energy; });
  } catch (const Error& e) {
    rep.failed("algebraic_spectrum", e.what());
    return finish(std::move(rep));
  }

  json per_state = json::array();
  const int mult = cfg.family.moving_multiplicity();
  const auto xs = spectra::residual_sample_points(cfg.family);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    const std::string prefix = "state[" + std::to_string(i) + "].";
    json st;
    rep.equal(prefix + "degree_law", s.census_polynomial().degree(), mult * s.n_label);
    const double r = spectra::schrodinger_residual(s, xs);
    st["schrodinger_residual"] = r;
    rep.bounded(prefix + "schrodinger_residual", r, 1e-8);
    try {
      census_section(rep, cfg, s, prefix, st);
    } catch (const Error& e) {
      rep.failed(prefix + "zero_census", e.what());
    }
    infinity_section(rep, s, prefix, st);
    per_state.push_back(st);
  }
  res["states"] = per_state;
  containment_section(rep, cfg, states);
  return finish(std::move(rep));
}

// ---------------------------------------------------------------- front end

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidInput, "cannot open output file " + path.string());
  f << text;
  if (!f) throw Error(ErrorKind::InvalidInput, "cannot write output file " + path.string());
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"QHJ residue pipeline for quasi-exactly solvable potentials", "qhjqes"};
  app.require_subcommand(1);
  std::string config_path, out_path;
  int level = 0;
  bool sanity = false;

  auto* derive = app.add_subcommand("derive", "quantization ledger and QES condition");
  auto* spectrum = app.add_subcommand("spectrum", "algebraic energies matched against the finite-difference oracle");
  auto* poles = app.add_subcommand("poles", "moving and fixed poles of the momentum function for one level");
  auto* verify = app.add_subcommand("verify", "every check; exit 2 names the first failure");
  for (auto* sub : {derive, spectrum, poles, verify}) {
    sub->add_option("--config", config_path, "JSON configuration")->required();
    sub->add_option("--out", out_path, "report path (default: output.report, else stdout)");
  }
  poles->add_option("--level", level, "index of the algebraic state, ascending energy")->check(CLI::NonNegativeNumber);
  spectrum->add_flag("--sanity", sanity, "harmonic oscillator check of the oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfigError;
  }

  try {
    const RunConfig cfg = load_config(config_path);
    Outcome out = derive->parsed()     ? cmd_derive(cfg)
                  : spectrum->parsed() ? cmd_spectrum(cfg, sanity)
                  : poles->parsed()    ? cmd_poles(cfg, level)
                                       : cmd_verify(cfg);
    const std::string text = dump(out.report.to_json());
    std::optional<std::filesystem::path> report_path;
    if (!out_path.empty()) report_path = resolve_output(out_path);
    else if (cfg.output.report) report_path = resolve_output(*cfg.output.report);
    if (report_path) write_file(*report_path, text);
    else std::cout << text;
    if (out.csv) {
      const std::string csv_name = cfg.output.csv ? *cfg.output.csv : "poles_level" + std::to_string(level) + ".csv";
      write_file(resolve_output(csv_name), *out.csv);
    }
    if (const auto ff = out.report.first_failure()) std::cerr << "FAIL: first failing check " << *ff << "\n";
    return out.exit_code;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return e.kind() == ErrorKind::InvalidInput ? kConfigError : kVerificationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace qhjqes::cli
