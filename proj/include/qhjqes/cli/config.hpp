#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "qhjqes/engine/family.hpp"
#include "qhjqes/oracle/oracle.hpp"

namespace qhjqes::cli {

using nlohmann::json;

struct GridConfig {
  std::optional<double> x_min;
  std::optional<double> x_max;
  /// Largest N the oracle refinement may reach.
  int N = 1 << 16;
};

struct Tolerances {
  double residue_tol = 1e-8;
  double contour_tol = 1e-8;
  double oracle_tol = 1e-4;
};

struct OutputConfig {
  std::optional<std::string> report;
  std::optional<std::string> csv;
};

struct RunConfig {
  engine::PotentialFamily family = engine::Sextic{};
  /// QES parameter requested by the config (required for the template forms).
  std::optional<int> n;
  GridConfig grid;
  Tolerances tolerances;
  OutputConfig output;
  /// Normalized echo: parseable by parse_config and reproduces this config.
  json echo;

  oracle::Domain oracle_domain() const;
};

/// Validates keys, types and the family invariants. Throws Error(InvalidInput).
RunConfig parse_config(const json& j);
RunConfig load_config(const std::filesystem::path& path);

/// Relative paths resolve under QHJQES_OUTPUT_DIR when it is set.
std::filesystem::path resolve_output(const std::string& path);

}  // namespace qhjqes::cli
