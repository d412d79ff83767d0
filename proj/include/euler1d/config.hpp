#pragma once

#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "euler1d/scenarios.hpp"
#include "euler1d/solver.hpp"

namespace euler1d {

/// Malformed or invalid configuration; field() is the dotted path of the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct DiagnosticsOptions {
  double fit_t_a = 20.0;
  double fit_t_b = 200.0;
  double margin = 0.05;
  std::optional<double> M_override;
  double smoothness_threshold = 1.0e3;
  double vacuum_fraction = 1.0e-6;
  int field_stride = 1;
  std::vector<double> trace_seeds{-20.0, -15.0, -10.0, -6.0, -3.0, 0.0, 3.0, 6.0, 10.0, 15.0, 20.0};
  double trace_start = 0.0;
  double oracle_horizon = 30.0;
  double oracle_threshold = 0.05;
  double oracle_improvement = 1.7;
  double path_tolerance = 1.0e-6;
};

struct RunConfig {
  ScenarioSpec scenario;
  Numerics numerics;
  DiagnosticsOptions diagnostics;
  std::string out_dir = "out";

  RunOptions run_options() const;
};

/// Unknown keys and type mismatches are ConfigErrors naming the key path.
RunConfig parse_config(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& c);

/// Checks every module precondition before any compute.
void validate(const RunConfig& c);

/// Applies a KEY=VALUE override to a raw config document. Values are JSON, a
/// ratio p/q, or a bare string; a key without dots is resolved against the sections.
void apply_override(nlohmann::json& doc, const std::string& assignment);

nlohmann::json read_json_file(const std::string& path);

/// read_json_file + overrides + parse_config + validate.
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

}  // namespace euler1d
