#include "euler1d/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace euler1d {

const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::constant: return "constant";
    case ScenarioKind::rarefaction: return "rarefaction";
    case ScenarioKind::nonisentropic: return "nonisentropic";
    case ScenarioKind::compressive: return "compressive";
    case ScenarioKind::periodic_wave: return "periodic_wave";
  }
  return "?";
}

ScenarioKind scenario_kind_from_string(const std::string& s) {
  for (auto k : {ScenarioKind::constant, ScenarioKind::rarefaction, ScenarioKind::nonisentropic,
                 ScenarioKind::compressive, ScenarioKind::periodic_wave}) {
    if (s == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown scenario kind '" + s + "'");
}

double ScenarioSpec::background_eta() const {
  return eta0 ? *eta0 : eta_from_tau(1.0, gas.constants());
}

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw std::domain_error(std::string(what) + " must be positive");
}

}  // namespace

InitialData constant_state(double u0, double eta0, double m0, const Grid& grid) {
  require_positive(eta0, "eta0");
  require_positive(m0, "m0");
  return sample_profiles(
      grid, [u0](double) { return u0; }, [eta0](double) { return eta0; }, [m0](double) { return m0; });
}

InitialData rarefaction_interaction(double amplitude, double width, double eta0, double m0, const Grid& grid) {
  require_positive(amplitude, "amplitude");
  require_positive(width, "width");
  require_positive(eta0, "eta0");
  require_positive(m0, "m0");
  return sample_profiles(
      grid, [=](double x) { return amplitude * std::tanh(x / width); }, [eta0](double) { return eta0; },
      [m0](double) { return m0; });
}

bool approaches_vacuum(double amplitude, double eta0, double m0) { return amplitude >= m0 * eta0; }

InitialData nonisentropic_smooth(double entropy_amplitude, double entropy_width, double amplitude, double width,
                                 double eta0, double c_v, const Grid& grid) {
  require_positive(entropy_width, "entropy_width");
  require_positive(width, "width");
  require_positive(eta0, "eta0");
  require_positive(c_v, "c_v");
  if (!(amplitude >= 0.0)) throw std::domain_error("amplitude must be non-negative");
  auto data = sample_profiles(
      grid, [=](double x) { return amplitude * std::tanh(x / width); }, [eta0](double) { return eta0; },
      [=](double x) { return m_from_S(entropy_amplitude * std::tanh(x / entropy_width), c_v); });
  for (double m : data.m) {
    if (!(m > 0.0)) throw std::domain_error("entropy profile yields non-positive m");
  }
  return data;
}

InitialData compressive(double amplitude, double width, double eta0, double m0, const Grid& grid) {
  require_positive(amplitude, "amplitude");
  require_positive(width, "width");
  require_positive(eta0, "eta0");
  require_positive(m0, "m0");
  return sample_profiles(
      grid, [=](double x) { return -amplitude * std::tanh(x / width); }, [eta0](double) { return eta0; },
      [m0](double) { return m0; });
}

InitialData periodic_wave(double u0, double amplitude, double eta0, double m0, const Grid& grid) {
  require_positive(eta0, "eta0");
  require_positive(m0, "m0");
  const double k = 2.0 * std::numbers::pi / grid.length();
  const double x0 = grid.x_min;
  return sample_profiles(
      grid, [=](double x) { return u0 + amplitude * std::sin(k * (x - x0)); },
      [=](double x) { return eta0 * (1.0 + 0.1 * std::sin(k * (x - x0) + 1.0)); },
      [=](double x) { return m0 * (1.0 + 0.1 * std::cos(k * (x - x0))); });
}

InitialData generate(const ScenarioSpec& spec) {
  const double eta0 = spec.background_eta();
  switch (spec.kind) {
    case ScenarioKind::constant: return constant_state(spec.u0, eta0, spec.m0, spec.grid);
    case ScenarioKind::rarefaction:
      return rarefaction_interaction(spec.amplitude, spec.width, eta0, spec.m0, spec.grid);
    case ScenarioKind::nonisentropic:
      return nonisentropic_smooth(spec.entropy_amplitude, spec.entropy_width, spec.amplitude, spec.width, eta0,
                                  spec.gas.c_v, spec.grid);
    case ScenarioKind::compressive: return compressive(spec.amplitude, spec.width, eta0, spec.m0, spec.grid);
    case ScenarioKind::periodic_wave: return periodic_wave(spec.u0, spec.amplitude, eta0, spec.m0, spec.grid);
  }
  throw std::invalid_argument("unhandled scenario kind");
}

HypothesisReport check_hypotheses(const FieldState& state, const Solver& solver) {
  HypothesisReport r;
  const auto g = solver.gradients(state);
  const auto m = state.m();
  r.eta_min = *std::min_element(state.eta.begin(), state.eta.end());
  r.eta_max = *std::max_element(state.eta.begin(), state.eta.end());
  r.M_L = *std::min_element(m.begin(), m.end());
  r.M_U = *std::max_element(m.begin(), m.end());
  r.M_D = 0.0;
  for (double v : g.m_x) r.M_D = std::max(r.M_D, std::abs(v));
  r.V = log_total_variation(m);
  r.alpha_tilde_max = *std::max_element(g.alpha_tilde.begin(), g.alpha_tilde.end());
  r.beta_tilde_max = *std::max_element(g.beta_tilde.begin(), g.beta_tilde.end());
  for (std::size_t i = 0; i < g.u_x.size(); ++i) {
    r.gradient_abs_max = std::max({r.gradient_abs_max, std::abs(g.u_x[i]), std::abs(g.eta_x[i]),
                                   std::abs(g.alpha_tilde[i]), std::abs(g.beta_tilde[i])});
  }
  if (!(r.eta_min > 0.0)) r.failures.emplace_back("eta must be positive");
  if (!(r.M_L > 0.0)) r.failures.emplace_back("m must be bounded away from zero");
  if (!std::isfinite(r.eta_max) || !std::isfinite(r.M_U)) r.failures.emplace_back("eta and m must be bounded");
  if (!std::isfinite(r.M_D)) r.failures.emplace_back("m_x must be bounded");
  if (!std::isfinite(r.V)) r.failures.emplace_back("total variation of log m must be finite");
  if (!std::isfinite(r.gradient_abs_max)) r.failures.emplace_back("gradients must be bounded");
  r.satisfied = r.failures.empty();
  return r;
}

std::optional<std::string> far_field_warning(const ScenarioSpec& spec, const InitialData& data) {
  if (spec.grid.boundary != Boundary::frozen) return std::nullopt;
  const auto gas = spec.gas.constants();
  double c_max = 0.0;
  for (std::size_t i = 0; i < data.eta.size(); ++i) c_max = std::max(c_max, sound_speed(data.eta[i], data.m[i], gas));
  const double active = 3.0 * std::max(spec.width, spec.kind == ScenarioKind::nonisentropic ? spec.entropy_width : 0.0);
  const double distance = std::min(-spec.grid.x_min, spec.grid.x_max) - active;
  const double reach = c_max * spec.horizon;
  if (reach < distance) return std::nullopt;
  std::ostringstream os;
  os << "frozen far-field margin exceeded: c_max*T = " << reach << " >= distance to boundary " << distance
     << "; boundary effects may enter the outer part of the domain";
  return os.str();
}

}  // namespace euler1d
