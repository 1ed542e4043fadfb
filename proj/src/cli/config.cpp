#include "qhjqes/cli/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>

#include "qhjqes/engine/ledger.hpp"
#include "qhjqes/error.hpp"

namespace qhjqes::cli {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, "config: " + what); }

void only_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) bad(where + " must be an object");
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) bad("unknown key '" + k + "' in " + where);
}

double number(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) bad("missing '" + key + "' in " + where);
  const auto& v = obj.at(key);
  if (!v.is_number()) bad("'" + key + "' in " + where + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad("'" + key + "' in " + where + " must be finite");
  return d;
}

int integer(const json& v, const std::string& what) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::floor(d) == d && std::abs(d) < 1e9) return static_cast<int>(d);
  }
  bad("'" + what + "' must be an integer");
}

double positive(const json& obj, const std::string& key, const std::string& where) {
  const double d = number(obj, key, where);
  if (!(d > 0.0)) bad("'" + key + "' in " + where + " must be positive");
  return d;
}

}  // namespace

oracle::Domain RunConfig::oracle_domain() const {
  oracle::Domain d = oracle::default_domain(family);
  if (grid.x_min) d.x_min = *grid.x_min;
  if (grid.x_max) d.x_max = *grid.x_max;
  return d;
}

RunConfig parse_config(const json& j) {
  only_keys(j, "config", {"family", "n", "grid", "tolerances", "output"});
  RunConfig c;
  if (j.contains("n")) {
    c.n = integer(j.at("n"), "n");
    if (*c.n < 0) bad("'n' must be >= 0");
  }

  if (!j.contains("family")) bad("missing 'family'");
  const json& f = j.at("family");
  if (!f.is_object() || !f.contains("name") || !f.at("name").is_string()) bad("family.name must be a string");
  const std::string name = f.at("name").get<std::string>();
  json fam_echo = {{"name", name}};

  const auto need_n = [&](const char* form) {
    if (!c.n) bad(std::string("the ") + form + " form needs a top-level 'n'");
    return *c.n;
  };

  if (name == "sextic") {
    if (f.contains("alpha") || f.contains("beta") || f.contains("gamma")) {
      only_keys(f, "family", {"name", "alpha", "beta", "gamma"});
      const engine::Sextic s{number(f, "alpha", "family"), number(f, "beta", "family"), number(f, "gamma", "family")};
      c.family = engine::PotentialFamily(s);
      fam_echo.update({{"alpha", s.alpha}, {"beta", s.beta}, {"gamma", s.gamma}});
    } else {
      only_keys(f, "family", {"name", "a", "b"});
      const double a = positive(f, "a", "family");
      const double b = f.contains("b") ? number(f, "b", "family") : 0.0;
      c.family = engine::qes_parameterize(engine::SexticTemplate{a, b}, need_n("a/b"));
      const auto& s = c.family.as<engine::Sextic>();
      fam_echo.update({{"alpha", s.alpha}, {"beta", s.beta}, {"gamma", s.gamma}});
    }
  } else if (name == "radial_sextic") {
    only_keys(f, "family", {"name", "S", "a", "b", "M"});
    const double S = number(f, "S", "family"), a = number(f, "a", "family");
    const double b = f.contains("b") ? number(f, "b", "family") : 0.0;
    const int M = f.contains("M") ? integer(f.at("M"), "M") : need_n("S/a/b");
    c.family = engine::PotentialFamily(engine::RadialSextic{S, a, b, M});
    fam_echo.update({{"S", S}, {"a", a}, {"b", b}, {"M", M}});
  } else if (name == "circular" || name == "hyperbolic") {
    only_keys(f, "family", {"name", "S1", "S2", "q1", "M"});
    const double S1 = number(f, "S1", "family"), S2 = number(f, "S2", "family"), q1 = number(f, "q1", "family");
    const int M = f.contains("M") ? integer(f.at("M"), "M") : need_n("S1/S2/q1");
    if (name == "circular") c.family = engine::PotentialFamily(engine::Circular{S1, S2, q1, M});
    else c.family = engine::PotentialFamily(engine::Hyperbolic{S1, S2, q1, M});
    fam_echo.update({{"S1", S1}, {"S2", S2}, {"q1", q1}, {"M", M}});
  } else {
    bad("unknown family '" + name + "' (expected sextic, radial_sextic, circular, hyperbolic)");
  }

  if (j.contains("grid")) {
    const json& g = j.at("grid");
    only_keys(g, "grid", {"x_min", "x_max", "N"});
    if (g.contains("x_min")) c.grid.x_min = number(g, "x_min", "grid");
    if (g.contains("x_max")) c.grid.x_max = number(g, "x_max", "grid");
    if (g.contains("N")) c.grid.N = integer(g.at("N"), "grid.N");
    if (c.grid.N < 1023) bad("grid.N must be >= 1023");
  }
  const auto dom = c.oracle_domain();
  if (!(dom.x_max > dom.x_min)) bad("grid requires x_max > x_min");

  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    only_keys(t, "tolerances", {"residue_tol", "contour_tol", "oracle_tol"});
    if (t.contains("residue_tol")) c.tolerances.residue_tol = positive(t, "residue_tol", "tolerances");
    if (t.contains("contour_tol")) c.tolerances.contour_tol = positive(t, "contour_tol", "tolerances");
    if (t.contains("oracle_tol")) c.tolerances.oracle_tol = positive(t, "oracle_tol", "tolerances");
    if (c.tolerances.oracle_tol < 4e-8) bad("tolerances.oracle_tol must be >= 4e-8");
  }

  if (j.contains("output")) {
    const json& o = j.at("output");
    only_keys(o, "output", {"report", "csv"});
    for (const char* k : {"report", "csv"}) {
      if (!o.contains(k)) continue;
      if (!o.at(k).is_string()) bad(std::string("output.") + k + " must be a string");
      (std::string(k) == "report" ? c.output.report : c.output.csv) = o.at(k).get<std::string>();
    }
  }

  c.echo = {{"family", fam_echo},
            {"grid", {{"x_min", dom.x_min}, {"x_max", dom.x_max}, {"N", c.grid.N}}},
            {"tolerances",
             {{"residue_tol", c.tolerances.residue_tol},
              {"contour_tol", c.tolerances.contour_tol},
              {"oracle_tol", c.tolerances.oracle_tol}}}};
  if (c.n) c.echo["n"] = *c.n;
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    bad("invalid JSON in " + path.string() + ": " + e.what());
  }
  return parse_config(j);
}

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("QHJQES_OUTPUT_DIR"); dir && *dir) return std::filesystem::path(dir) / p;
  }
  return p;
}

}  // namespace qhjqes::cli
