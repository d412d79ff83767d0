#pragma once

#include <optional>
#include <string>
#include <vector>

#include "euler1d/solver.hpp"
#include "euler1d/thermo.hpp"

namespace euler1d {

enum class ScenarioKind { constant, rarefaction, nonisentropic, compressive, periodic_wave };

const char* to_string(ScenarioKind k);
ScenarioKind scenario_kind_from_string(const std::string& s);

struct GasParams {
  double gamma = 3.0;
  double K = 1.0 / 3.0;
  double c_v = 1.0;

  GasConstants constants() const { return GasConstants(gamma, K, c_v); }
};

/// Everything needed to regenerate one experiment's initial data.
struct ScenarioSpec {
  std::string name = "scenario";
  ScenarioKind kind = ScenarioKind::rarefaction;
  GasParams gas;
  Grid grid;
  double u0 = 0.0;
  /// Background eta; when absent it is chosen so that tau = 1.
  std::optional<double> eta0;
  double m0 = 1.0;
  double amplitude = 2.0;
  double width = 5.0;
  double entropy_amplitude = 0.5;
  double entropy_width = 10.0;
  double horizon = 200.0;
  double snapshot_interval = 1.0;

  double background_eta() const;
};

InitialData constant_state(double u0, double eta0, double m0, const Grid& grid);

/// u = A tanh(x/w) on a uniform (eta0, m0) background: two separating
/// rarefactions. Throws std::domain_error unless A > 0.
InitialData rarefaction_interaction(double amplitude, double width, double eta0, double m0, const Grid& grid);

/// Riemann-invariant overlap criterion A >= m0 eta0 for the vacuum-approaching regime.
bool approaches_vacuum(double amplitude, double eta0, double m0);

/// S = s_a tanh(x/w_s), m = exp(S/(2 c_v)), u = A tanh(x/w), eta = eta0.
InitialData nonisentropic_smooth(double entropy_amplitude, double entropy_width, double amplitude, double width,
                                 double eta0, double c_v, const Grid& grid);

/// u = -A tanh(x/w) on an isentropic background.
InitialData compressive(double amplitude, double width, double eta0, double m0, const Grid& grid);

/// Smooth periodic data for manufactured tests:
/// u = u0 + A sin(k x), eta = eta0 (1 + 0.1 sin(k x + 1)), m = m0 (1 + 0.1 cos(k x)),
/// with k = 2 pi / L.
InitialData periodic_wave(double u0, double amplitude, double eta0, double m0, const Grid& grid);

InitialData generate(const ScenarioSpec& spec);

/// Bounds the existence theory asks of initial data, measured on the grid.
struct HypothesisReport {
  double eta_min = 0.0;
  double eta_max = 0.0;
  double M_L = 0.0;
  double M_U = 0.0;
  double M_D = 0.0;
  double V = 0.0;
  double alpha_tilde_max = 0.0;
  double beta_tilde_max = 0.0;
  double gradient_abs_max = 0.0;
  bool satisfied = false;
  std::vector<std::string> failures;
};

HypothesisReport check_hypotheses(const FieldState& state, const Solver& solver);

/// Frozen far-field validity: boundary signals travel c_max T, which must stay
/// below the distance from the data's active region (|x| <= 3 w) to the boundary.
/// Returns a warning message when that fails.
std::optional<std::string> far_field_warning(const ScenarioSpec& spec, const InitialData& data);

}  // namespace euler1d
