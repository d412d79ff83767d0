#pragma once

// Riccati dynamics of the gradient variables along characteristics
// dx/dt = +c (forward) and dx/dt = -c (backward), and an ODE oracle that
// integrates them along paths traced through a completed run.

#include <string>
#include <vector>

#include "euler1d/solver.hpp"
#include "euler1d/thermo.hpp"

namespace euler1d {

enum class Direction { forward, backward };

const char* to_string(Direction d);

struct RiccatiCoeffs {
  double k1;
  double k2;
};

/// k1 = ((g+1) K_c / (2(g-1))) eta^(2/(g-1)), k2 = ((g-1)/(g(g+1))) eta m_x.
RiccatiCoeffs riccati_coeffs(double eta, double m_x, const GasConstants& gas);

/// d+ alpha~ = k1 (k2 (3 a + b) + a b - a^2)       (forward)
/// d- beta~  = k1 (-k2 (a + 3 b) + a b - b^2)      (backward)
double riccati_rhs_tilde(double alpha_tilde, double beta_tilde, double eta, double m_x, Direction dir,
                         const GasConstants& gas);

/// d+ eta = -K_c eta^((g+1)/(g-1)) (beta~ + ((g-1)/g) eta m_x)
/// d- eta = -K_c eta^((g+1)/(g-1)) (alpha~ - ((g-1)/g) eta m_x)
/// `other` is beta~ for the forward family and alpha~ for the backward one.
double d_eta_along(Direction dir, double eta, double other, double m_x, const GasConstants& gas);

/// Expanded three-term form of d+ alpha (forward) or d- beta (backward) for
/// alpha = alpha~ + lambda eta, beta = beta~ + lambda eta.
double riccati_rhs_transformed(double alpha, double beta, double eta, double m_x, double lambda, Direction dir,
                               const GasConstants& gas);

/// The three bracketed factors of the forward expansion. Under the growth
/// hypotheses (M/2 <= alpha <= M, beta <= M) the first two are non-negative
/// and the third lies in [0, 5M/4].
struct GrowthBrackets {
  double shifted_margin;  // alpha - lambda eta + (2(g-1)/g) eta m_x
  double shift_product;   // (lambda - (4/g) m_x)(alpha - lambda eta)
  double coupling;        // alpha - ((3g-1)/(g+1)) lambda eta + ((g-1)/(g(g+1))) eta m_x
};

GrowthBrackets growth_brackets(double alpha, double eta, double m_x, double lambda, double gamma);

struct TraceSample {
  double t = 0.0;
  double x = 0.0;
  double c = 0.0;
  double u = 0.0;
  double eta = 0.0;
  double m = 0.0;
  double m_x = 0.0;
  double alpha_tilde = 0.0;
  double beta_tilde = 0.0;
};

/// A characteristic path. midpoints[k] is the sample at the temporal midpoint
/// of [nodes[k].t, nodes[k+1].t].
struct CharTrace {
  Direction direction = Direction::forward;
  std::vector<TraceSample> nodes;
  std::vector<TraceSample> midpoints;
  /// Path left the interpolation window before the run ended.
  bool truncated = false;
};

/// Space-time interpolation of a completed run: cubic Lagrange in space,
/// linear in time between snapshots.
class RunInterpolator {
 public:
  RunInterpolator(const RunResult& run, const Solver& solver);

  TraceSample sample(double t, double x) const;
  double speed(double t, double x) const;
  bool inside(double x) const;
  double t_begin() const { return times_.front(); }
  double t_end() const { return times_.back(); }
  const std::vector<double>& times() const { return times_; }
  const Grid& grid() const { return grid_; }

 private:
  struct Stencil {
    int index[4];
    double weight[4];
  };
  Stencil stencil(double x) const;
  std::size_t bracket(double t) const;

  GasConstants gas_;
  Grid grid_;
  std::vector<double> times_;
  std::vector<const std::vector<double>*> u_;
  std::vector<const std::vector<double>*> eta_;
  std::vector<std::vector<double>> alpha_tilde_;
  std::vector<std::vector<double>> beta_tilde_;
  std::vector<double> m_;
  std::vector<double> m_x_;
};

/// Integrates dx/dt = +-c from (x0, t0) to the end of the run with RK4 and
/// step-doubling control so each step's path error stays below path_tolerance.
/// Throws std::invalid_argument when (x0, t0) lies outside the run.
CharTrace trace(const RunInterpolator& field, double x0, double t0, Direction dir, double path_tolerance = 1e-6);

enum class OracleQuantity { alpha_tilde, beta_tilde, alpha, beta };

const char* to_string(OracleQuantity q);

struct OracleResult {
  std::vector<double> t;
  std::vector<double> value;  // integrated
  std::vector<double> field;  // interpolated field value at the same node
  bool blew_up = false;
  /// Last node time before |value| exceeded the blowup threshold.
  double blowup_time = 0.0;
};

inline constexpr double kOracleBlowupThreshold = 1.0e6;

/// Integrates the Riccati ODE of `which` along the trace (RK4 over the trace's
/// nodes and midpoints), starting from initial_value; the partner variable is
/// taken from the trace's samples. Forward traces carry alpha~/alpha, backward
/// traces beta~/beta; a mismatch throws std::invalid_argument.
OracleResult oracle_integrate(const CharTrace& trace, double initial_value, OracleQuantity which,
                              const GasConstants& gas, double lambda = 0.0);

/// max |value - field| / max |field| over the integrated nodes (absolute when
/// the field vanishes identically).
double relative_discrepancy(const OracleResult& r);

/// Trace with frozen coefficients: eta, m_x and the partner variable held
/// fixed, nodes equally spaced on [0, t_end].
CharTrace frozen_trace(Direction dir, double eta, double m_x, double partner, double t_end, int intervals,
                       const GasConstants& gas);

/// Pole time of the frozen-coefficient Riccati ODE started from `tilde0` with a
/// vanishing partner; infinity when no blowup occurs before t_end.
double frozen_blowup_time(double eta, double tilde0, double t_end, const GasConstants& gas, int intervals = 200000);

}  // namespace euler1d
