#include "euler1d/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace euler1d {

const char* to_string(Direction d) { return d == Direction::forward ? "forward" : "backward"; }

const char* to_string(OracleQuantity q) {
  switch (q) {
    case OracleQuantity::alpha_tilde: return "alpha_tilde";
    case OracleQuantity::beta_tilde: return "beta_tilde";
    case OracleQuantity::alpha: return "alpha";
    case OracleQuantity::beta: return "beta";
  }
  return "?";
}

namespace {

void require_positive_eta(double eta) {
  if (!(eta > 0.0)) throw std::domain_error("eta must be positive");
}

// K_c eta^((g+1)/(g-1)) = c/m
double speed_per_m(double eta, const GasConstants& gas) {
  return gas.K_c() * eta * std::pow(eta, gas.eta_power());
}

}  // namespace

RiccatiCoeffs riccati_coeffs(double eta, double m_x, const GasConstants& gas) {
  require_positive_eta(eta);
  const double g = gas.gamma();
  return {(g + 1.0) * gas.K_c() / (2.0 * (g - 1.0)) * std::pow(eta, gas.eta_power()),
          (g - 1.0) / (g * (g + 1.0)) * eta * m_x};
}

double riccati_rhs_tilde(double alpha_tilde, double beta_tilde, double eta, double m_x, Direction dir,
                         const GasConstants& gas) {
  const auto [k1, k2] = riccati_coeffs(eta, m_x, gas);
  const double a = alpha_tilde;
  const double b = beta_tilde;
  if (dir == Direction::forward) return k1 * (k2 * (3.0 * a + b) + a * b - a * a);
  return k1 * (-k2 * (a + 3.0 * b) + a * b - b * b);
}

double d_eta_along(Direction dir, double eta, double other, double m_x, const GasConstants& gas) {
  require_positive_eta(eta);
  const double g = gas.gamma();
  const double entropy_term = (g - 1.0) / g * eta * m_x;
  const double sign = dir == Direction::forward ? 1.0 : -1.0;
  return -speed_per_m(eta, gas) * (other + sign * entropy_term);
}

double riccati_rhs_transformed(double alpha, double beta, double eta, double m_x, double lambda, Direction dir,
                               const GasConstants& gas) {
  require_positive_eta(eta);
  if (!(lambda >= 0.0)) throw std::domain_error("lambda must be non-negative");
  const double g = gas.gamma();
  const double cm = speed_per_m(eta, gas);
  const double k1 = (g + 1.0) / (2.0 * (g - 1.0)) * gas.K_c() * std::pow(eta, gas.eta_power());
  // The backward family mirrors the forward one with m_x -> -m_x and alpha <-> beta.
  const double sgn = dir == Direction::forward ? 1.0 : -1.0;
  const double self = dir == Direction::forward ? alpha : beta;
  const double partner = dir == Direction::forward ? beta : alpha;
  const double shifted = self - lambda * eta;
  const double first = -0.5 * lambda * cm * (shifted + sgn * 2.0 * (g - 1.0) / g * eta * m_x);
  const double second = -0.5 * cm * (lambda - sgn * 4.0 / g * m_x) * shifted;
  const double third = k1 *
                       (self - (3.0 * g - 1.0) / (g + 1.0) * lambda * eta +
                        sgn * (g - 1.0) / (g * (g + 1.0)) * eta * m_x) *
                       (partner - self);
  return first + second + third;
}

GrowthBrackets growth_brackets(double alpha, double eta, double m_x, double lambda, double gamma) {
  const double g = gamma;
  const double shifted = alpha - lambda * eta;
  return {shifted + 2.0 * (g - 1.0) / g * eta * m_x, (lambda - 4.0 / g * m_x) * shifted,
          alpha - (3.0 * g - 1.0) / (g + 1.0) * lambda * eta + (g - 1.0) / (g * (g + 1.0)) * eta * m_x};
}

RunInterpolator::RunInterpolator(const RunResult& run, const Solver& solver)
    : gas_(solver.gas()), grid_(run.grid) {
  if (run.snapshots.size() < 2) throw std::invalid_argument("interpolation needs at least two snapshots");
  const auto& statics = *run.snapshots.front().statics;
  m_ = statics.m;
  m_x_ = statics.m_x;
  for (const auto& s : run.snapshots) {
    times_.push_back(s.t);
    u_.push_back(&s.u);
    eta_.push_back(&s.eta);
    auto g = solver.gradients(s);
    alpha_tilde_.push_back(std::move(g.alpha_tilde));
    beta_tilde_.push_back(std::move(g.beta_tilde));
  }
}

bool RunInterpolator::inside(double x) const {
  if (grid_.boundary == Boundary::periodic) return std::isfinite(x);
  return x >= grid_.x(2) && x <= grid_.x(grid_.n - 4);
}

RunInterpolator::Stencil RunInterpolator::stencil(double x) const {
  const int n = grid_.n;
  if (grid_.boundary == Boundary::periodic) {
    x = grid_.x_min + std::fmod(std::fmod(x - grid_.x_min, grid_.length()) + grid_.length(), grid_.length());
  }
  const double s = (x - grid_.x_min) / grid_.dx() - 0.5;
  int j = static_cast<int>(std::floor(s));
  double th = s - j;
  if (grid_.boundary == Boundary::frozen) {
    if (j < 1 || j > n - 3) throw std::out_of_range("interpolation point outside the grid window");
  }
  Stencil st{};
  st.weight[0] = -th * (th - 1.0) * (th - 2.0) / 6.0;
  st.weight[1] = (th + 1.0) * (th - 1.0) * (th - 2.0) / 2.0;
  st.weight[2] = -(th + 1.0) * th * (th - 2.0) / 2.0;
  st.weight[3] = (th + 1.0) * th * (th - 1.0) / 6.0;
  for (int k = 0; k < 4; ++k) st.index[k] = ((j - 1 + k) % n + n) % n;
  return st;
}

std::size_t RunInterpolator::bracket(double t) const {
  if (t <= times_.front()) return 0;
  if (t >= times_.back()) return times_.size() - 2;
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  return static_cast<std::size_t>(it - times_.begin()) - 1;
}

TraceSample RunInterpolator::sample(double t, double x) const {
  const auto st = stencil(x);
  const std::size_t k = bracket(t);
  const double w1 = std::clamp((t - times_[k]) / (times_[k + 1] - times_[k]), 0.0, 1.0);
  const double w0 = 1.0 - w1;
  auto at = [&](const std::vector<double>& f) {
    double v = 0.0;
    for (int q = 0; q < 4; ++q) v += st.weight[q] * f[st.index[q]];
    return v;
  };
  auto in_time = [&](const std::vector<double>& f0, const std::vector<double>& f1) {
    return w0 * at(f0) + w1 * at(f1);
  };
  TraceSample s;
  s.t = t;
  s.x = x;
  s.u = in_time(*u_[k], *u_[k + 1]);
  s.eta = in_time(*eta_[k], *eta_[k + 1]);
  s.m = at(m_);
  s.m_x = at(m_x_);
  s.alpha_tilde = in_time(alpha_tilde_[k], alpha_tilde_[k + 1]);
  s.beta_tilde = in_time(beta_tilde_[k], beta_tilde_[k + 1]);
  s.c = sound_speed(s.eta, s.m, gas_);
  return s;
}

double RunInterpolator::speed(double t, double x) const {
  const auto st = stencil(x);
  const std::size_t k = bracket(t);
  const double w1 = std::clamp((t - times_[k]) / (times_[k + 1] - times_[k]), 0.0, 1.0);
  double eta = 0.0;
  double m = 0.0;
  for (int q = 0; q < 4; ++q) {
    eta += st.weight[q] * ((1.0 - w1) * (*eta_[k])[st.index[q]] + w1 * (*eta_[k + 1])[st.index[q]]);
    m += st.weight[q] * m_[st.index[q]];
  }
  return sound_speed(eta, m, gas_);
}

CharTrace trace(const RunInterpolator& field, double x0, double t0, Direction dir, double path_tolerance) {
  if (!(t0 >= field.t_begin()) || !(t0 < field.t_end())) {
    throw std::invalid_argument("trace start time outside the run");
  }
  if (!field.inside(x0)) throw std::invalid_argument("trace start point outside the interpolation window");
  if (!(path_tolerance > 0.0)) throw std::invalid_argument("path tolerance must be positive");

  const double sign = dir == Direction::forward ? 1.0 : -1.0;
  auto rk4 = [&](double t, double x, double h) {
    const double k1 = sign * field.speed(t, x);
    const double k2 = sign * field.speed(t + 0.5 * h, x + 0.5 * h * k1);
    const double k3 = sign * field.speed(t + 0.5 * h, x + 0.5 * h * k2);
    const double k4 = sign * field.speed(t + h, x + h * k3);
    return x + h / 6.0 * (k1 + 2.0 * (k2 + k3) + k4);
  };

  CharTrace tr;
  tr.direction = dir;
  tr.nodes.push_back(field.sample(t0, x0));
  const auto& times = field.times();
  std::size_t k = static_cast<std::size_t>(std::upper_bound(times.begin(), times.end(), t0) - times.begin());
  double t = t0;
  double x = x0;
  try {
    while (k < times.size()) {
      const double target = times[k];
      double h = target - t;
      double x_mid = 0.0;
      double x_new = 0.0;
      bool reached = true;
      for (int depth = 0;; ++depth) {
        const double x_full = rk4(t, x, h);
        x_mid = rk4(t, x, 0.5 * h);
        x_new = rk4(t + 0.5 * h, x_mid, 0.5 * h);
        if (std::abs(x_new - x_full) / 15.0 <= path_tolerance || depth >= 40) break;
        h *= 0.5;
        reached = false;
      }
      if (!field.inside(x_mid) || !field.inside(x_new)) {
        tr.truncated = true;
        break;
      }
      tr.midpoints.push_back(field.sample(t + 0.5 * h, x_mid));
      t = reached ? target : t + h;
      x = x_new;
      tr.nodes.push_back(field.sample(t, x));
      if (reached) ++k;
    }
  } catch (const std::out_of_range&) {
    tr.truncated = true;
  }
  return tr;
}

OracleResult oracle_integrate(const CharTrace& trace, double initial_value, OracleQuantity which,
                              const GasConstants& gas, double lambda) {
  const bool forward_quantity = which == OracleQuantity::alpha_tilde || which == OracleQuantity::alpha;
  if (forward_quantity != (trace.direction == Direction::forward)) {
    throw std::invalid_argument(std::string(to_string(which)) + " is not carried by a " + to_string(trace.direction) +
                                " characteristic");
  }
  if (trace.nodes.empty() || trace.midpoints.size() + 1 != trace.nodes.size()) {
    throw std::invalid_argument("trace lacks the node/midpoint samples the oracle needs");
  }
  const Direction dir = trace.direction;
  auto rate = [&](const TraceSample& s, double y) {
    switch (which) {
      case OracleQuantity::alpha_tilde: return riccati_rhs_tilde(y, s.beta_tilde, s.eta, s.m_x, dir, gas);
      case OracleQuantity::beta_tilde: return riccati_rhs_tilde(s.alpha_tilde, y, s.eta, s.m_x, dir, gas);
      case OracleQuantity::alpha:
        return riccati_rhs_transformed(y, s.beta_tilde + lambda * s.eta, s.eta, s.m_x, lambda, dir, gas);
      case OracleQuantity::beta:
        return riccati_rhs_transformed(s.alpha_tilde + lambda * s.eta, y, s.eta, s.m_x, lambda, dir, gas);
    }
    return 0.0;
  };
  auto field_value = [&](const TraceSample& s) {
    switch (which) {
      case OracleQuantity::alpha_tilde: return s.alpha_tilde;
      case OracleQuantity::beta_tilde: return s.beta_tilde;
      case OracleQuantity::alpha: return s.alpha_tilde + lambda * s.eta;
      case OracleQuantity::beta: return s.beta_tilde + lambda * s.eta;
    }
    return 0.0;
  };

  OracleResult r;
  double y = initial_value;
  r.t.push_back(trace.nodes[0].t);
  r.value.push_back(y);
  r.field.push_back(field_value(trace.nodes[0]));
  for (std::size_t k = 0; k + 1 < trace.nodes.size(); ++k) {
    const auto& a = trace.nodes[k];
    const auto& mid = trace.midpoints[k];
    const auto& b = trace.nodes[k + 1];
    const double h = b.t - a.t;
    const double k1 = rate(a, y);
    const double k2 = rate(mid, y + 0.5 * h * k1);
    const double k3 = rate(mid, y + 0.5 * h * k2);
    const double k4 = rate(b, y + h * k3);
    const double next = y + h / 6.0 * (k1 + 2.0 * (k2 + k3) + k4);
    if (!std::isfinite(next) || std::abs(next) > kOracleBlowupThreshold) {
      r.blew_up = true;
      r.blowup_time = a.t;
      return r;
    }
    y = next;
    r.t.push_back(b.t);
    r.value.push_back(y);
    r.field.push_back(field_value(b));
  }
  return r;
}

double relative_discrepancy(const OracleResult& r) {
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t k = 0; k < r.value.size(); ++k) {
    diff = std::max(diff, std::abs(r.value[k] - r.field[k]));
    scale = std::max(scale, std::abs(r.field[k]));
  }
  return scale > 0.0 ? diff / scale : diff;
}

CharTrace frozen_trace(Direction dir, double eta, double m_x, double partner, double t_end, int intervals,
                       const GasConstants& gas) {
  if (intervals < 1 || !(t_end > 0.0)) throw std::invalid_argument("frozen trace needs t_end > 0 and intervals >= 1");
  const double c = sound_speed(eta, 1.0, gas);
  const double sign = dir == Direction::forward ? 1.0 : -1.0;
  auto make = [&](double t) {
    TraceSample s;
    s.t = t;
    s.x = sign * c * t;
    s.c = c;
    s.eta = eta;
    s.m = 1.0;
    s.m_x = m_x;
    s.alpha_tilde = partner;
    s.beta_tilde = partner;
    return s;
  };
  CharTrace tr;
  tr.direction = dir;
  const double h = t_end / intervals;
  for (int k = 0; k <= intervals; ++k) tr.nodes.push_back(make(k * h));
  for (int k = 0; k < intervals; ++k) tr.midpoints.push_back(make((k + 0.5) * h));
  return tr;
}

double frozen_blowup_time(double eta, double tilde0, double t_end, const GasConstants& gas, int intervals) {
  const auto tr = frozen_trace(Direction::forward, eta, 0.0, 0.0, t_end, intervals, gas);
  const auto r = oracle_integrate(tr, tilde0, OracleQuantity::alpha_tilde, gas);
  return r.blew_up ? r.blowup_time : std::numeric_limits<double>::infinity();
}

}  // namespace euler1d
