#pragma once

#include <string>
#include <vector>

#include "euler1d/characteristics.hpp"
#include "euler1d/config.hpp"

namespace euler1d {

/// 0 success, 1 fault (bad config, refused certificate, numerical failure, I/O),
/// 2 a theorem check failed.
enum ExitCode : int { kExitOk = 0, kExitFault = 1, kExitViolation = 2 };

struct CommandResult {
  int exit_code = kExitOk;
  std::string message;
};

/// Run, certify and write the full report (certificate.json, series.csv, fields).
CommandResult cmd_run(const RunConfig& config, const std::string& out_dir);

/// Run and certify both theorems; writes certificate.json and series.csv.
CommandResult cmd_certify(const RunConfig& config, const std::string& out_dir);

/// Riccati-oracle comparison at the configured resolution and at half of it.
CommandResult cmd_oracle(const RunConfig& config, const std::string& out_dir);

/// One cmd_run per value of `parameter` (a config key, dotted or bare) over
/// `jobs` worker threads; sub-reports go to out_dir/<key>=<value>/.
CommandResult cmd_sweep(const nlohmann::json& base_config, const std::string& parameter,
                        const std::vector<std::string>& values, const std::string& out_dir, int jobs);

struct TraceDiscrepancy {
  Direction direction = Direction::forward;
  double x0 = 0.0;
  std::size_t nodes = 0;
  bool truncated = false;
  bool blew_up = false;
  double tilde = 0.0;        // relative discrepancy of alpha~ (forward) or beta~ (backward)
  double transformed = 0.0;  // same for alpha or beta
};

struct OracleStudy {
  int n = 0;
  double dx = 0.0;
  double snapshot_interval = 0.0;
  double lambda = 0.0;
  std::vector<TraceDiscrepancy> traces;
  double max_tilde = 0.0;
  double max_transformed = 0.0;
  std::size_t forward_traces = 0;
  std::size_t backward_traces = 0;
};

/// Runs the configured scenario on n cells (horizon capped at the oracle
/// horizon, snapshots every 1.5 dx / c_max) and traces forward and backward
/// characteristics from every seed.
OracleStudy oracle_study(const RunConfig& config, int n);

}  // namespace euler1d
