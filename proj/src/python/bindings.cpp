#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qhjqes/cli/commands.hpp"
#include "qhjqes/engine/ledger.hpp"
#include "qhjqes/error.hpp"
#include "qhjqes/oracle/oracle.hpp"
#include "qhjqes/qmf/qmf.hpp"
#include "qhjqes/spectra/spectra.hpp"

namespace py = pybind11;
using namespace qhjqes;
using engine::PotentialFamily;
using series::Complex;

namespace {

std::vector<Complex> coeffs(const series::Polynomial& p) { return {p.coeffs().begin(), p.coeffs().end()}; }

py::dict ledger_dict(const PotentialFamily& f) {
  const auto L = engine::quantization_ledger(f);
  py::list fixed;
  for (const auto& e : L.fixed) {
    py::dict d;
    d["location"] = e.location;
    d["residue"] = e.selected.leading_coefficient;
    d["contribution"] = e.contribution;
    fixed.append(d);
  }
  py::dict d;
  d["n"] = L.condition.n;
  d["rhs_form"] = L.condition.rhs_form;
  d["lhs_value"] = L.condition.lhs_value;
  d["infinity_coefficient"] = L.infinity_coefficient;
  d["infinity_value"] = L.infinity_value;
  d["fixed_poles"] = fixed;
  d["moving_multiplicity"] = L.moving_multiplicity;
  d["moving_count"] = L.moving_count;
  d["balance_residual"] = L.balance_residual;
  return d;
}

py::dict pole_dict(const qmf::PoleReport& p) {
  py::dict d;
  d["location"] = p.location;
  d["multiplicity"] = p.multiplicity;
  d["residue"] = p.measured_residue;
  d["expected_residue"] = p.expected_residue;
  d["kind"] = qmf::to_string(p.kind);
  d["axis"] = qmf::to_string(p.axis);
  return d;
}

py::dict census_dict(const spectra::AlgebraicState& s) {
  const auto c = qmf::zero_census(s);
  py::list moving, fixed;
  for (const auto& p : c.moving) moving.append(pole_dict(p));
  for (const auto& p : c.fixed) fixed.append(pole_dict(p));
  py::dict d;
  d["n_real"] = c.n_real;
  d["n_complex"] = c.n_complex;
  d["total"] = c.total;
  d["quantization_value"] = c.quantization_value;
  d["global_count"] = c.global_count;
  d["argument_count"] = c.argument_count;
  d["moving"] = moving;
  d["fixed"] = fixed;
  d["warnings"] = c.warnings;
  return d;
}

// CLI command on a config given as a JSON string; returns (report JSON, exit code).
std::pair<std::string, int> run_command(const std::string& command, const std::string& config, int level,
                                        bool sanity) {
  const auto cfg = cli::parse_config(cli::json::parse(config));
  cli::Outcome o = command == "derive"     ? cli::cmd_derive(cfg)
                   : command == "spectrum" ? cli::cmd_spectrum(cfg, sanity)
                   : command == "poles"    ? cli::cmd_poles(cfg, level)
                   : command == "verify"
                       ? cli::cmd_verify(cfg)
                       : throw Error(ErrorKind::InvalidInput, "unknown command '" + command + "'");
  return {cli::dump(o.report.to_json()), o.exit_code};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "QHJ residue pipeline for quasi-exactly solvable potentials";

  static py::exception<Error> error(m, "QhjqesError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::class_<PotentialFamily>(m, "PotentialFamily")
      .def_property_readonly("name", &PotentialFamily::name)
      .def("potential", py::overload_cast<double>(&PotentialFamily::potential, py::const_), py::arg("x"))
      .def("moving_multiplicity", &PotentialFamily::moving_multiplicity)
      .def("__repr__", [](const PotentialFamily& f) { return "<PotentialFamily " + f.name() + ">"; });

  m.def(
      "sextic", [](double alpha, double beta, double gamma) { return PotentialFamily(engine::Sextic{alpha, beta, gamma}); },
      py::arg("alpha"), py::arg("beta"), py::arg("gamma"));
  m.def(
      "qes_sextic",
      [](double a, double b, int n) { return engine::qes_parameterize(engine::SexticTemplate{a, b}, n); },
      py::arg("a"), py::arg("b"), py::arg("n"), "sextic with gamma = a^2, beta = 2ab, alpha = b^2 - a(3+2n)");
  m.def(
      "radial_sextic",
      [](double S, double a, double b, int M) { return PotentialFamily(engine::RadialSextic{S, a, b, M}); },
      py::arg("S"), py::arg("a"), py::arg("b"), py::arg("M"));
  m.def(
      "circular",
      [](double S1, double S2, double q1, int M) { return PotentialFamily(engine::Circular{S1, S2, q1, M}); },
      py::arg("S1"), py::arg("S2"), py::arg("q1"), py::arg("M"));
  m.def(
      "hyperbolic",
      [](double S1, double S2, double q1, int M) { return PotentialFamily(engine::Hyperbolic{S1, S2, q1, M}); },
      py::arg("S1"), py::arg("S2"), py::arg("q1"), py::arg("M"));

  m.def("condition_value", &engine::closed_form_condition_value, py::arg("family"));
  m.def("ledger", &ledger_dict, py::arg("family"));

  py::class_<spectra::AlgebraicState>(m, "AlgebraicState")
      .def_readonly("energy", &spectra::AlgebraicState::energy)
      .def_readonly("n_label", &spectra::AlgebraicState::n_label)
      .def_property_readonly("sector", [](const spectra::AlgebraicState& s) { return spectra::to_string(s.sector); })
      .def_property_readonly("poly", [](const spectra::AlgebraicState& s) { return coeffs(s.poly); })
      .def_property_readonly("census_polynomial",
                             [](const spectra::AlgebraicState& s) { return coeffs(s.census_polynomial()); })
      .def(
          "psi", [](const spectra::AlgebraicState& s, Complex x) { return spectra::eigenfunction(s)(x); }, py::arg("x"))
      .def(
          "momentum", [](const spectra::AlgebraicState& s, Complex x) { return qmf::qmf(s)(x); }, py::arg("x"),
          "-i psi'/psi")
      .def("census", &census_dict)
      .def(
          "residual",
          [](const spectra::AlgebraicState& s) {
            return spectra::schrodinger_residual(s, spectra::residual_sample_points(s.family));
          })
      .def("__repr__", [](const spectra::AlgebraicState& s) {
        return "<AlgebraicState E=" + std::to_string(s.energy) + " " + s.family.name() + ">";
      });

  m.def("algebraic_states", py::overload_cast<const PotentialFamily&>(&spectra::algebraic_states), py::arg("family"));

  m.def(
      "oracle_spectrum",
      [](const PotentialFamily& f, int k, double tol) {
        const auto o = oracle::refine(f, k, tol);
        return std::make_pair(o.energies, o.error_estimates);
      },
      py::arg("family"), py::arg("k"), py::arg("tol") = 1e-5, "(energies, error estimates) of the k lowest levels");

  m.def("run_command", &run_command, py::arg("command"), py::arg("config"), py::arg("level") = 0,
        py::arg("sanity") = false);
}
