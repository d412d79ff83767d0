#include "euler1d/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "euler1d/characteristics.hpp"

namespace euler1d {

namespace {

double max_of(std::span<const double> v) { return *std::max_element(v.begin(), v.end()); }
double min_of(std::span<const double> v) { return *std::min_element(v.begin(), v.end()); }

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double min_rho(const FieldState& s, const GasConstants& gas) {
  // rho is increasing in eta
  return 1.0 / tau_from_eta(min_of(s.eta), gas);
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

MeasuredBounds measure_bounds(const RunResult& run, const Solver& solver, const BoundOptions& options) {
  if (run.snapshots.empty()) throw std::invalid_argument("run has no snapshots");
  const auto& gas = solver.gas();
  const FieldState& first = run.snapshots.front();
  const auto m = first.m();
  const auto m_x = first.m_x();

  MeasuredBounds mb;
  BoundParams& b = mb.params;
  b.gamma = gas.gamma();
  b.M_L = min_of(m);
  b.M_U = max_of(m);
  for (double v : m_x) b.M_D = std::max(b.M_D, std::abs(v));
  mb.M_eta_initial = max_of(first.eta);
  b.M_eta = mb.M_eta_initial;
  for (const auto& s : run.snapshots) b.M_eta = std::max(b.M_eta, max_of(s.eta));
  b.V = log_total_variation(m);
  for (std::size_t i = 0; i < first.size(); ++i) {
    b.M_sbar = std::max(b.M_sbar, std::abs(first.u[i] + m[i] * first.eta[i]));
    b.M_rbar = std::max(b.M_rbar, std::abs(first.u[i] - m[i] * first.eta[i]));
  }
  b.tau_max0 = tau_from_eta(min_of(first.eta), gas);

  const auto bc = bound_constants(gas.gamma(), b.M_eta, b.M_D);
  b.M_star = bc.M_star;
  b.lambda = bc.lambda;

  const auto g = solver.gradients(first, b.lambda);
  mb.initial_max_alpha_beta = std::max(max_of(g.alpha), max_of(g.beta));
  double scale = 0.0;
  for (std::size_t i = 0; i < g.alpha.size(); ++i) scale = std::max({scale, std::abs(g.alpha[i]), std::abs(g.beta[i])});
  b.M = options.M_override ? *options.M_override
                           : choose_invariant_level(b.M_star, mb.initial_max_alpha_beta, options.margin, scale);
  b.K_1 = growth_constant_K1(gas.gamma(), gas.K_c(), b.M_eta);
  b.C_1 = b.M > 0.0 ? density_floor_constant(b.tau_max0, b.M) : 0.0;
  return mb;
}

std::vector<std::string> certification_failures(const MeasuredBounds& bounds) {
  std::vector<std::string> out;
  const auto& b = bounds.params;
  if (b.M < b.M_star) out.push_back("M below M_star (M=" + num(b.M) + ", M_star=" + num(b.M_star) + ")");
  if (!(bounds.initial_max_alpha_beta < b.M)) {
    out.push_back("initial max{alpha,beta}=" + num(bounds.initial_max_alpha_beta) + " is not below M=" + num(b.M));
  }
  if (!(b.M > 0.0)) out.push_back("M must be positive");
  return out;
}

InvariantReport invariant_monitor(const RunResult& run, const Solver& solver, const MeasuredBounds& bounds,
                                  double tolerance) {
  const auto failures = certification_failures(bounds);
  if (!failures.empty()) {
    std::string msg = "cannot certify the invariant domain:";
    for (const auto& f : failures) msg += " " + f + ";";
    throw CertificationRefused(msg);
  }
  const double M = bounds.params.M;
  InvariantReport rep;
  for (const auto& s : run.snapshots) {
    const auto g = solver.gradients(s, bounds.params.lambda);
    InvariantSample smp;
    smp.t = s.t;
    smp.max_alpha = max_of(g.alpha);
    smp.max_beta = max_of(g.beta);
    const double top = std::max(smp.max_alpha, smp.max_beta);
    smp.violated = top > M * (1.0 + tolerance);
    rep.worst_ratio = std::max(rep.worst_ratio, top / M);
    rep.violated = rep.violated || smp.violated;
    rep.samples.push_back(smp);
  }
  return rep;
}

FloorReport density_floor_check(const RunResult& run, const GasConstants& gas, double C_1, double tau_max0) {
  FloorReport rep;
  for (std::size_t k = 0; k < run.snapshots.size(); ++k) {
    const auto& s = run.snapshots[k];
    FloorSample f;
    f.t = s.t;
    f.min_rho = min_rho(s, gas);
    f.floor = C_1 / (1.0 + s.t);
    const double growth = k < run.running_max_u_x.size() ? run.running_max_u_x[k] : 0.0;
    const double tau_bound = tau_max0 + growth * (s.t - run.snapshots.front().t);
    f.intermediate_floor = tau_bound > 0.0 ? 1.0 / tau_bound : std::numeric_limits<double>::infinity();
    f.ok = f.min_rho >= f.floor;
    f.intermediate_ok = f.min_rho >= f.intermediate_floor * (1.0 - kViolationTolerance);
    rep.ok = rep.ok && f.ok;
    rep.intermediate_ok = rep.intermediate_ok && f.intermediate_ok;
    rep.samples.push_back(f);
  }
  return rep;
}

DecayFit decay_fit(std::span<const double> times, std::span<const double> min_rho_values, double t_a, double t_b) {
  if (times.size() != min_rho_values.size()) throw std::invalid_argument("decay_fit: length mismatch");
  if (!(t_a >= 1.0) || !(t_b > t_a)) throw std::invalid_argument("decay_fit: window must satisfy 1 <= t_a < t_b");
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] >= t_a && times[i] <= t_b && min_rho_values[i] > 0.0) {
      xs.push_back(std::log1p(times[i]));
      ys.push_back(std::log(min_rho_values[i]));
    }
  }
  if (xs.size() < 20) {
    throw std::invalid_argument("decay_fit: need at least 20 samples in [" + num(t_a) + ", " + num(t_b) + "], got " +
                                std::to_string(xs.size()));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  DecayFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.exponent * xs[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  fit.samples = xs.size();
  fit.t_a = t_a;
  fit.t_b = t_b;
  return fit;
}

GrowthBoundReport growth_bound_check(const RunResult& run, const Solver& solver, const BoundParams& b,
                                     double tolerance) {
  const auto& gas = solver.gas();
  GrowthBoundReport rep;
  const double M = b.M;
  for (const auto& s : run.snapshots) {
    const auto g = solver.gradients(s, b.lambda);
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (Direction dir : {Direction::forward, Direction::backward}) {
        const bool fwd = dir == Direction::forward;
        const double self = fwd ? g.alpha[i] : g.beta[i];
        const double partner = fwd ? g.beta[i] : g.alpha[i];
        if (!(self >= 0.5 * M && self <= M && partner <= M)) continue;
        ++rep.points_checked;
        const double rate = riccati_rhs_transformed(g.alpha[i], g.beta[i], s.eta[i], g.m_x[i], b.lambda, dir, gas);
        const double excess = rate - b.K_1 * M * (M - self);
        rep.max_growth_excess = std::max(rep.max_growth_excess, excess);
        if (excess > tolerance) ++rep.growth_violations;
        // The backward family is the forward one with m_x -> -m_x.
        const auto br = growth_brackets(self, s.eta[i], fwd ? g.m_x[i] : -g.m_x[i], b.lambda, gas.gamma());
        const double lowest = std::min({br.shifted_margin, br.shift_product, br.coupling});
        rep.min_bracket = std::min(rep.min_bracket, lowest);
        rep.max_coupling_excess = std::max(rep.max_coupling_excess, br.coupling - 1.25 * M);
        if (lowest < -tolerance || br.coupling > 1.25 * M + tolerance) ++rep.bracket_violations;
      }
    }
  }
  return rep;
}

IsentropicReport isentropic_invariance(const RunResult& run, const Solver& solver, double rel_tolerance) {
  IsentropicReport rep;
  bool first = true;
  for (const auto& s : run.snapshots) {
    const auto g = solver.gradients(s);
    const double top = std::max(max_of(g.alpha_tilde), max_of(g.beta_tilde));
    if (first) {
      rep.initial_max = top;
      rep.running_max = top;
      for (std::size_t i = 0; i < s.size(); ++i) {
        rep.scale = std::max({rep.scale, std::abs(g.alpha_tilde[i]), std::abs(g.beta_tilde[i])});
      }
      first = false;
    }
    rep.running_max = std::max(rep.running_max, top);
  }
  rep.ok = rep.running_max <= rep.initial_max + rel_tolerance * rep.scale;
  return rep;
}

bool min_rho_non_increasing(std::span<const SeriesRow> rows, double t_from, double rel_slack) {
  const SeriesRow* prev = nullptr;
  for (const auto& r : rows) {
    if (r.t < t_from) continue;
    if (prev && r.min_rho > prev->min_rho * (1.0 + rel_slack)) return false;
    prev = &r;
  }
  return true;
}

Certificate certify(const RunResult& run, const Solver& solver, const CertifyOptions& options) {
  Certificate cert;
  cert.bounds = measure_bounds(run, solver, options.bounds);
  cert.invariant = invariant_monitor(run, solver, cert.bounds, options.violation_tolerance);
  const auto& b = cert.bounds.params;
  cert.floor = density_floor_check(run, solver.gas(), b.C_1, b.tau_max0);
  cert.termination = to_string(run.reason);
  cert.end_time = run.end_time;

  for (std::size_t k = 0; k < run.snapshots.size(); ++k) {
    const auto& s = run.snapshots[k];
    const auto g = solver.gradients(s, b.lambda);
    SeriesRow row;
    row.t = s.t;
    row.min_rho = cert.floor.samples[k].min_rho;
    row.max_alpha = cert.invariant.samples[k].max_alpha;
    row.max_beta = cert.invariant.samples[k].max_beta;
    row.max_ux = max_of(g.u_x);
    row.floor = cert.floor.samples[k].floor;
    cert.series.push_back(row);
  }

  std::vector<double> ts;
  std::vector<double> rhos;
  for (const auto& r : cert.series) {
    ts.push_back(r.t);
    rhos.push_back(r.min_rho);
  }
  const double t_b = std::min(options.fit_t_b, run.end_time);
  try {
    cert.fit = decay_fit(ts, rhos, options.fit_t_a, t_b);
  } catch (const std::invalid_argument& e) {
    cert.fit_note = e.what();
  }
  return cert;
}

void emit_report(const Certificate& cert, const RunResult& run, const Solver& solver,
                 const std::filesystem::path& out_dir, const ReportOptions& options) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());

  const auto& b = cert.bounds.params;
  nlohmann::ordered_json j;
  j["bounds"] = {{"gamma", b.gamma},   {"M_L", b.M_L},       {"M_U", b.M_U},
                 {"M_D", b.M_D},       {"M_eta", b.M_eta},   {"M_eta_initial", cert.bounds.M_eta_initial},
                 {"M_star", b.M_star}, {"lambda", b.lambda}, {"M", b.M},
                 {"K_1", b.K_1},       {"C_1", b.C_1},       {"V", b.V},
                 {"M_sbar", b.M_sbar}, {"M_rbar", b.M_rbar}, {"tau_max0", b.tau_max0}};
  j["initial_max_alpha_beta"] = cert.bounds.initial_max_alpha_beta;
  j["violated"] = cert.invariant.violated;
  j["invariant_worst_ratio"] = cert.invariant.worst_ratio;
  j["floor_ok"] = cert.floor.ok;
  j["intermediate_floor_ok"] = cert.floor.intermediate_ok;
  if (cert.fit) {
    j["decay_fit"] = {{"exponent", cert.fit->exponent}, {"intercept", cert.fit->intercept},
                      {"residual", cert.fit->residual}, {"samples", cert.fit->samples},
                      {"window", {cert.fit->t_a, cert.fit->t_b}}};
  } else {
    j["decay_fit"] = nullptr;
    j["decay_fit_note"] = cert.fit_note;
  }
  j["termination"] = cert.termination;
  j["end_time"] = cert.end_time;
  j["snapshots"] = cert.series.size();
  {
    const auto path = out_dir / "certificate.json";
    auto out = open_for_write(path);
    out << j.dump(2) << '\n';
    finish(out, path);
  }
  {
    const auto path = out_dir / "series.csv";
    auto out = open_for_write(path);
    out << kSeriesHeader << '\n';
    for (const auto& r : cert.series) {
      out << num(r.t) << ',' << num(r.min_rho) << ',' << num(r.max_alpha) << ',' << num(r.max_beta) << ','
          << num(r.max_ux) << ',' << num(r.floor) << '\n';
    }
    finish(out, path);
  }
  if (options.field_stride <= 0) return;
  const auto& gas = solver.gas();
  const auto index_path = out_dir / "fields_index.csv";
  auto index = open_for_write(index_path);
  index << "file,t\n";
  for (std::size_t k = 0; k < run.snapshots.size(); k += static_cast<std::size_t>(options.field_stride)) {
    const auto& s = run.snapshots[k];
    const auto g = solver.gradients(s, b.lambda);
    char name[32];
    std::snprintf(name, sizeof name, "fields_%04zu.csv", k);
    const auto path = out_dir / name;
    index << name << ',' << num(s.t) << '\n';
    auto out = open_for_write(path);
    out << "x,u,eta,m,rho,alpha_tilde,beta_tilde,alpha,beta\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
      out << num(run.grid.x(static_cast<int>(i))) << ',' << num(s.u[i]) << ',' << num(s.eta[i]) << ','
          << num(s.m()[i]) << ',' << num(1.0 / tau_from_eta(s.eta[i], gas)) << ',' << num(g.alpha_tilde[i]) << ','
          << num(g.beta_tilde[i]) << ',' << num(g.alpha[i]) << ',' << num(g.beta[i]) << '\n';
    }
    finish(out, path);
  }
  finish(index, index_path);
}

}  // namespace euler1d
