#pragma once

#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "euler1d/gradients.hpp"
#include "euler1d/solver.hpp"

namespace euler1d {

/// Raised when the invariant-domain certificate's preconditions fail.
class CertificationRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BoundOptions {
  double margin = 0.05;
  std::optional<double> M_override;
};

/// Measured bound parameters. M_eta is the maximum of eta over every snapshot
/// of the run; M_eta_initial and the other data bounds come from t = 0.
struct MeasuredBounds {
  BoundParams params;
  double M_eta_initial = 0.0;
  double initial_max_alpha_beta = 0.0;
};

MeasuredBounds measure_bounds(const RunResult& run, const Solver& solver, const BoundOptions& options = {});

/// Reasons the invariant-domain hypotheses fail; empty when they hold.
std::vector<std::string> certification_failures(const MeasuredBounds& bounds);

struct InvariantSample {
  double t = 0.0;
  double max_alpha = 0.0;
  double max_beta = 0.0;
  bool violated = false;
};

struct InvariantReport {
  std::vector<InvariantSample> samples;
  bool violated = false;
  /// max over snapshots of max{alpha, beta} / M.
  double worst_ratio = 0.0;
};

inline constexpr double kViolationTolerance = 1.0e-6;

/// Throws CertificationRefused when certification_failures() is non-empty.
InvariantReport invariant_monitor(const RunResult& run, const Solver& solver, const MeasuredBounds& bounds,
                                  double tolerance = kViolationTolerance);

struct FloorSample {
  double t = 0.0;
  double min_rho = 0.0;
  double floor = 0.0;               // C_1/(1+t)
  double intermediate_floor = 0.0;  // 1/(tau_max0 + G t), G the running max of u_x
  bool ok = false;
  bool intermediate_ok = false;
};

struct FloorReport {
  std::vector<FloorSample> samples;
  bool ok = true;
  bool intermediate_ok = true;
};

FloorReport density_floor_check(const RunResult& run, const GasConstants& gas, double C_1, double tau_max0);

struct DecayFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of the log-log residuals
  std::size_t samples = 0;
  double t_a = 0.0;
  double t_b = 0.0;
};

/// Least-squares slope of log(min_rho) against log(1+t) over [t_a, t_b].
/// Throws std::invalid_argument on fewer than 20 samples in the window or a
/// window that is not 1 <= t_a < t_b.
DecayFit decay_fit(std::span<const double> times, std::span<const double> min_rho, double t_a, double t_b);

/// Pointwise check of d+alpha <= K_1 M (M - alpha) and of the three bracket
/// signs wherever M/2 <= alpha <= M and beta <= M.
struct GrowthBoundReport {
  std::size_t points_checked = 0;
  std::size_t growth_violations = 0;
  std::size_t bracket_violations = 0;
  double max_growth_excess = -std::numeric_limits<double>::infinity();
  double min_bracket = std::numeric_limits<double>::infinity();
  double max_coupling_excess = -std::numeric_limits<double>::infinity();
};

GrowthBoundReport growth_bound_check(const RunResult& run, const Solver& solver, const BoundParams& bounds,
                                     double tolerance = 1e-9);

/// Running max over x of max(alpha~, beta~) against its initial value.
struct IsentropicReport {
  double initial_max = 0.0;
  double running_max = 0.0;
  double scale = 0.0;
  bool ok = false;
};

IsentropicReport isentropic_invariance(const RunResult& run, const Solver& solver, double rel_tolerance = 1e-6);

struct SeriesRow {
  double t = 0.0;
  double min_rho = 0.0;
  double max_alpha = 0.0;
  double max_beta = 0.0;
  double max_ux = 0.0;
  double floor = 0.0;
};

/// True when min_rho never increases over rows with t >= t_from (up to a
/// relative slack).
bool min_rho_non_increasing(std::span<const SeriesRow> rows, double t_from, double rel_slack = 1e-12);

struct CertifyOptions {
  BoundOptions bounds;
  double fit_t_a = 20.0;
  double fit_t_b = 200.0;
  double violation_tolerance = kViolationTolerance;
};

struct Certificate {
  MeasuredBounds bounds;
  std::vector<SeriesRow> series;
  InvariantReport invariant;
  FloorReport floor;
  std::optional<DecayFit> fit;
  std::string fit_note;
  std::string termination;
  double end_time = 0.0;

  bool theorem_violation() const { return invariant.violated || !floor.ok; }
};

/// Bundles measure_bounds, invariant_monitor, density_floor_check and
/// decay_fit. Throws CertificationRefused on failed preconditions.
Certificate certify(const RunResult& run, const Solver& solver, const CertifyOptions& options = {});

struct ReportOptions {
  /// Write fields_xxxx.csv for every k-th snapshot (0 disables field output).
  int field_stride = 1;
};

/// certificate.json, series.csv, fields_xxxx.csv and fields_index.csv (file -> t)
/// under out_dir.
/// Throws std::runtime_error naming the path on I/O failure.
void emit_report(const Certificate& cert, const RunResult& run, const Solver& solver,
                 const std::filesystem::path& out_dir, const ReportOptions& options = {});

inline constexpr const char* kSeriesHeader = "t,min_rho,max_alpha,max_beta,max_ux,floor";

}  // namespace euler1d
