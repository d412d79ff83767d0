#include "euler1d/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace euler1d {

const char* to_string(Boundary b) {
  return b == Boundary::periodic ? "periodic" : "frozen";
}

Boundary boundary_from_string(const std::string& s) {
  if (s == "periodic") return Boundary::periodic;
  if (s == "frozen" || s == "frozen-far-field") return Boundary::frozen;
  throw std::invalid_argument("unknown boundary '" + s + "' (expected periodic or frozen)");
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::horizon: return "horizon reached";
    case Termination::smoothness_lost: return "smoothness lost";
    case Termination::vacuum: return "vacuum threshold";
    case Termination::numerical_fault: return "numerical fault";
  }
  return "?";
}

void Grid::validate() const {
  if (n < 16) throw std::invalid_argument("grid.n must be at least 16");
  if (!(x_max > x_min)) throw std::invalid_argument("grid.x_max must exceed grid.x_min");
}

void Numerics::validate() const {
  if (stencil_order != 2 && stencil_order != 4) {
    throw std::invalid_argument("numerics.stencil_order must be 2 or 4");
  }
  if (!(cfl > 0.0) || cfl > 2.0) throw std::invalid_argument("numerics.cfl must lie in (0, 2]");
  if (!(hyperdissipation >= 0.0)) throw std::invalid_argument("numerics.hyperdissipation must be >= 0");
}

void RunOptions::validate() const {
  if (!(horizon >= 0.0)) throw std::invalid_argument("horizon must be non-negative");
  if (!(snapshot_interval > 0.0)) throw std::invalid_argument("snapshot_interval must be positive");
  if (!(smoothness_threshold > 0.0)) throw std::invalid_argument("smoothness_threshold must be positive");
  if (!(vacuum_fraction >= 0.0 && vacuum_fraction < 1.0)) {
    throw std::invalid_argument("vacuum_fraction must lie in [0, 1)");
  }
}

InitialData sample_profiles(const Grid& grid, const Profile& u, const Profile& eta, const Profile& m) {
  grid.validate();
  InitialData d;
  d.grid = grid;
  d.u.resize(grid.n);
  d.eta.resize(grid.n);
  d.m.resize(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    d.u[i] = u(x);
    d.eta[i] = eta(x);
    d.m[i] = m(x);
  }
  for (int k = 0; k < kGhostCells; ++k) {
    const double xl = grid.x(-1 - k);
    const double xr = grid.x(grid.n + k);
    d.u_ghost.left[k] = u(xl);
    d.u_ghost.right[k] = u(xr);
    d.eta_ghost.left[k] = eta(xl);
    d.eta_ghost.right[k] = eta(xr);
    d.m_ghost.left[k] = m(xl);
    d.m_ghost.right[k] = m(xr);
  }
  return d;
}

Differencer::Differencer(Grid grid, int order) : grid_(grid), order_(order) {
  grid_.validate();
  if (order != 2 && order != 4) throw std::invalid_argument("stencil order must be 2 or 4");
}

std::vector<double> Differencer::extend(std::span<const double> f, const GhostValues& ghosts) const {
  const int n = grid_.n;
  if (static_cast<int>(f.size()) != n) throw std::invalid_argument("array length does not match grid");
  std::vector<double> ext(n + 2 * kGhostCells);
  std::copy(f.begin(), f.end(), ext.begin() + kGhostCells);
  for (int k = 0; k < kGhostCells; ++k) {
    if (grid_.boundary == Boundary::periodic) {
      ext[kGhostCells - 1 - k] = f[n - 1 - k];
      ext[kGhostCells + n + k] = f[k];
    } else {
      ext[kGhostCells - 1 - k] = ghosts.left[k];
      ext[kGhostCells + n + k] = ghosts.right[k];
    }
  }
  return ext;
}

std::vector<double> Differencer::derivative(std::span<const double> f, const GhostValues& ghosts) const {
  const auto ext = extend(f, ghosts);
  const int n = grid_.n;
  const double* e = ext.data() + kGhostCells;
  std::vector<double> d(n);
  if (order_ == 2) {
    const double s = 1.0 / (2.0 * grid_.dx());
    for (int i = 0; i < n; ++i) d[i] = (e[i + 1] - e[i - 1]) * s;
  } else {
    const double s = 1.0 / (12.0 * grid_.dx());
    for (int i = 0; i < n; ++i) d[i] = (8.0 * (e[i + 1] - e[i - 1]) - (e[i + 2] - e[i - 2])) * s;
  }
  return d;
}

std::vector<double> Differencer::sixth_difference(std::span<const double> f, const GhostValues& ghosts) const {
  const auto ext = extend(f, ghosts);
  const int n = grid_.n;
  const double* e = ext.data() + kGhostCells;
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) {
    d[i] = (e[i - 3] + e[i + 3]) - 6.0 * (e[i - 2] + e[i + 2]) + 15.0 * (e[i - 1] + e[i + 1]) - 20.0 * e[i];
  }
  return d;
}

FieldState make_initial_state(const InitialData& data, int stencil_order) {
  for (std::size_t i = 0; i < data.eta.size(); ++i) {
    if (!(data.eta[i] > 0.0)) throw std::domain_error("initial eta must be positive everywhere");
    if (!(data.m[i] > 0.0)) throw std::domain_error("initial m must be positive everywhere");
  }
  Differencer diff(data.grid, stencil_order);
  auto statics = std::make_shared<StaticField>();
  statics->m = data.m;
  statics->m_x = diff.derivative(data.m, data.m_ghost);
  statics->m_ghost = data.m_ghost;
  statics->u_ghost = data.u_ghost;
  statics->eta_ghost = data.eta_ghost;
  FieldState s;
  s.t = 0.0;
  s.u = data.u;
  s.eta = data.eta;
  s.statics = std::move(statics);
  return s;
}

bool smoothness_monitor(const GradientField& g, double threshold, double dx) {
  const double resolution_limit = 1.0 / (10.0 * dx);
  for (std::size_t i = 0; i < g.alpha_tilde.size(); ++i) {
    if (std::min(g.alpha_tilde[i], g.beta_tilde[i]) < -threshold) return false;
    if (!std::isfinite(g.alpha_tilde[i]) || !std::isfinite(g.beta_tilde[i])) return false;
  }
  for (std::size_t i = 0; i < g.u_x.size(); ++i) {
    if (std::abs(g.u_x[i]) > resolution_limit || std::abs(g.eta_x[i]) > resolution_limit) return false;
    if (!std::isfinite(g.u_x[i]) || !std::isfinite(g.eta_x[i])) return false;
  }
  return true;
}

Solver::Solver(GasConstants gas, Grid grid, Numerics numerics)
    : gas_(gas), grid_(grid), numerics_(numerics), diff_(grid, numerics.stencil_order) {
  numerics_.validate();
}

Rates Solver::rhs(const FieldState& state) const {
  const std::size_t n = state.size();
  const auto& st = *state.statics;
  const auto u_x = diff_.derivative(state.u, st.u_ghost);
  const auto eta_x = diff_.derivative(state.eta, st.eta_ghost);
  Rates r;
  r.deta_dt.resize(n);
  r.du_dt.resize(n);
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double eta = state.eta[i];
    const double m = st.m[i];
    const double eta_pow = std::pow(eta, gas_.eta_power());
    c[i] = sound_speed_unchecked(eta, m, eta_pow, gas_);
    const double p = pressure_unchecked(eta, m, eta_pow, gas_);
    r.deta_dt[i] = -(c[i] / m) * u_x[i];
    r.du_dt[i] = -m * c[i] * eta_x[i] - 2.0 * (p / m) * st.m_x[i];
  }
  if (numerics_.hyperdissipation > 0.0) {
    const auto d6u = diff_.sixth_difference(state.u, st.u_ghost);
    const auto d6eta = diff_.sixth_difference(state.eta, st.eta_ghost);
    const double k = numerics_.hyperdissipation / (64.0 * grid_.dx());
    for (std::size_t i = 0; i < n; ++i) {
      r.du_dt[i] += k * c[i] * d6u[i];
      r.deta_dt[i] += k * c[i] * d6eta[i];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(r.du_dt[i]) || !std::isfinite(r.deta_dt[i])) {
      throw NumericalFault("non-finite rate at cell " + std::to_string(i) + " (t=" + std::to_string(state.t) + ")");
    }
  }
  return r;
}

double Solver::stable_dt(const FieldState& state) const {
  double c_max = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    c_max = std::max(c_max, sound_speed_unchecked(state.eta[i], state.statics->m[i],
                                                  std::pow(state.eta[i], gas_.eta_power()), gas_));
  }
  if (!(c_max > 0.0) || !std::isfinite(c_max)) throw NumericalFault("invalid maximum sound speed");
  return numerics_.cfl * grid_.dx() / c_max;
}

FieldState Solver::step(const FieldState& state, double dt) const {
  const double limit = stable_dt(state);
  if (std::abs(dt) > limit * (1.0 + 1e-12)) {
    throw std::invalid_argument("dt=" + std::to_string(dt) + " violates the CFL limit " + std::to_string(limit));
  }
  const std::size_t n = state.size();
  auto stage = [&](const Rates& k, double h) {
    FieldState s;
    s.t = state.t + h;
    s.statics = state.statics;
    s.u.resize(n);
    s.eta.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      s.u[i] = state.u[i] + h * k.du_dt[i];
      s.eta[i] = state.eta[i] + h * k.deta_dt[i];
    }
    return s;
  };
  const Rates k1 = rhs(state);
  const Rates k2 = rhs(stage(k1, 0.5 * dt));
  const Rates k3 = rhs(stage(k2, 0.5 * dt));
  const Rates k4 = rhs(stage(k3, dt));
  FieldState out;
  out.t = state.t + dt;
  out.statics = state.statics;
  out.u.resize(n);
  out.eta.resize(n);
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.u[i] = state.u[i] + w * (k1.du_dt[i] + 2.0 * (k2.du_dt[i] + k3.du_dt[i]) + k4.du_dt[i]);
    out.eta[i] = state.eta[i] + w * (k1.deta_dt[i] + 2.0 * (k2.deta_dt[i] + k3.deta_dt[i]) + k4.deta_dt[i]);
    if (!std::isfinite(out.u[i]) || !std::isfinite(out.eta[i]) || !(out.eta[i] > 0.0)) {
      throw NumericalFault("invalid state at cell " + std::to_string(i) + " after step to t=" +
                           std::to_string(out.t));
    }
  }
  return out;
}

GradientField Solver::gradients(const FieldState& state, double lambda) const {
  const auto& st = *state.statics;
  return make_gradient_field(diff_.derivative(state.u, st.u_ghost), diff_.derivative(state.eta, st.eta_ghost),
                             st.m_x, state.eta, st.m, gas_.gamma(), lambda);
}

RunResult Solver::run(const FieldState& initial, const RunOptions& options) const {
  options.validate();
  RunResult result;
  result.grid = grid_;
  result.numerics = numerics_;

  const double t0 = initial.t;
  const double t_end = t0 + options.horizon;
  const double min_eta0 = *std::min_element(initial.eta.begin(), initial.eta.end());

  FieldState state = initial;
  double running_max_ux = -std::numeric_limits<double>::infinity();
  auto observe = [&](const FieldState& s) {
    const auto g = gradients(s);
    for (double v : g.u_x) running_max_ux = std::max(running_max_ux, v);
    return smoothness_monitor(g, options.smoothness_threshold, grid_.dx());
  };

  if (!observe(state)) {
    result.reason = Termination::smoothness_lost;
    result.message = "initial data fails the smoothness monitor";
    result.final_state = state;
    result.end_time = t0;
    return result;
  }
  result.snapshots.push_back(state);
  result.running_max_u_x.push_back(running_max_ux);

  std::size_t next_index = 1;
  auto snapshot_time = [&](std::size_t k) { return std::min(t0 + k * options.snapshot_interval, t_end); };
  const double time_eps = 1e-12 * std::max(1.0, std::abs(t_end));

  while (state.t < t_end - time_eps) {
    const double target = snapshot_time(next_index);
    double dt = 0.0;
    bool hits_target = false;
    try {
      dt = stable_dt(state);
      if (state.t + dt >= target - time_eps) {
        dt = target - state.t;
        hits_target = true;
      }
      state = step(state, dt);
    } catch (const NumericalFault& e) {
      result.reason = Termination::numerical_fault;
      result.message = e.what();
      break;
    }
    ++result.steps;
    if (hits_target) state.t = target;

    if (!observe(state)) {
      result.reason = Termination::smoothness_lost;
      result.message = "gradient monitor fired at t=" + std::to_string(state.t);
      break;
    }
    const double min_eta = *std::min_element(state.eta.begin(), state.eta.end());
    if (min_eta < options.vacuum_fraction * min_eta0) {
      result.reason = Termination::vacuum;
      result.message = "min eta fell below the vacuum threshold at t=" + std::to_string(state.t);
      break;
    }
    if (hits_target) {
      result.snapshots.push_back(state);
      result.running_max_u_x.push_back(running_max_ux);
      ++next_index;
    }
  }
  result.final_state = state;
  result.end_time = state.t;
  return result;
}

ConservativeIntegrator::ConservativeIntegrator(GasConstants gas, Grid grid, int stencil_order)
    : gas_(gas), diff_(grid, stencil_order) {
  if (grid.boundary != Boundary::periodic) {
    throw std::invalid_argument("conservative integrator supports periodic grids only");
  }
}

ConservativeIntegrator::State ConservativeIntegrator::from_field(const FieldState& s) const {
  State c;
  c.t = s.t;
  const std::size_t n = s.size();
  c.tau.resize(n);
  c.u = s.u;
  c.energy.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto pt = thermo_point(s.u[i], s.eta[i], s.statics->m[i], gas_);
    c.tau[i] = pt.tau;
    c.energy[i] = 0.5 * pt.u * pt.u + pt.internal_energy(gas_);
  }
  return c;
}

std::vector<double> ConservativeIntegrator::pressure(const State& s) const {
  std::vector<double> p(s.tau.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = (gas_.gamma() - 1.0) * (s.energy[i] - 0.5 * s.u[i] * s.u[i]) / s.tau[i];
  }
  return p;
}

std::vector<double> ConservativeIntegrator::entropy(const State& s) const {
  const auto p = pressure(s);
  std::vector<double> S(p.size());
  for (std::size_t i = 0; i < S.size(); ++i) {
    S[i] = gas_.c_v() * std::log(p[i] * std::pow(s.tau[i], gas_.gamma()) / gas_.K());
  }
  return S;
}

ConservativeIntegrator::State ConservativeIntegrator::rates(const State& s) const {
  const GhostValues unused{};
  const auto p = pressure(s);
  std::vector<double> flux(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) flux[i] = s.u[i] * p[i];
  State r;
  r.tau = diff_.derivative(s.u, unused);
  r.u = diff_.derivative(p, unused);
  for (double& v : r.u) v = -v;
  r.energy = diff_.derivative(flux, unused);
  for (double& v : r.energy) v = -v;
  return r;
}

ConservativeIntegrator::State ConservativeIntegrator::step(const State& s, double dt) const {
  auto axpy = [](const State& a, const State& k, double h) {
    State o = a;
    for (std::size_t i = 0; i < a.tau.size(); ++i) {
      o.tau[i] += h * k.tau[i];
      o.u[i] += h * k.u[i];
      o.energy[i] += h * k.energy[i];
    }
    return o;
  };
  const State k1 = rates(s);
  const State k2 = rates(axpy(s, k1, 0.5 * dt));
  const State k3 = rates(axpy(s, k2, 0.5 * dt));
  const State k4 = rates(axpy(s, k3, dt));
  State out = s;
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < s.tau.size(); ++i) {
    out.tau[i] += w * (k1.tau[i] + 2.0 * (k2.tau[i] + k3.tau[i]) + k4.tau[i]);
    out.u[i] += w * (k1.u[i] + 2.0 * (k2.u[i] + k3.u[i]) + k4.u[i]);
    out.energy[i] += w * (k1.energy[i] + 2.0 * (k2.energy[i] + k3.energy[i]) + k4.energy[i]);
  }
  out.t = s.t + dt;
  return out;
}

}  // namespace euler1d
