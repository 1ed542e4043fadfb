#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qhjqes/cli/config.hpp"

namespace qhjqes::cli {

inline constexpr const char* kSchemaVersion = "1";

enum ExitCode { kPass = 0, kConfigError = 1, kVerificationFailure = 2 };

struct Check {
  std::string name;
  bool pass = false;
  json measured;
  json expected;
  json tolerance;
  std::string message;
};

class Report {
 public:
  Report(std::string command, json inputs) : command_(std::move(command)), inputs_(std::move(inputs)) {}

  json& results() { return results_; }
  const std::vector<Check>& checks() const { return checks_; }

  void add(Check c) { checks_.push_back(std::move(c)); }
  /// |measured - expected| <= tol
  void close(const std::string& name, double measured, double expected, double tol);
  void close(const std::string& name, series::Complex measured, series::Complex expected, double tol);
  /// measured <= bound
  void bounded(const std::string& name, double measured, double bound);
  void equal(const std::string& name, long long measured, long long expected);
  void failed(const std::string& name, const std::string& message);

  bool passed() const;
  std::optional<std::string> first_failure() const;
  json to_json() const;

 private:
  std::string command_;
  json inputs_;
  json results_ = json::object();
  std::vector<Check> checks_;
};

json to_json(series::Complex z);

struct Outcome {
  Report report;
  int exit_code = kPass;
  /// CSV payload for `poles`.
  std::optional<std::string> csv;
};

Outcome cmd_derive(const RunConfig& cfg);
Outcome cmd_spectrum(const RunConfig& cfg, bool sanity = false);
Outcome cmd_poles(const RunConfig& cfg, int level);
Outcome cmd_verify(const RunConfig& cfg);

/// Deterministic serialization: sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

/// Full front end; returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace qhjqes::cli
