#include "euler1d/commands.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "euler1d/diagnostics.hpp"
#include "euler1d/scenarios.hpp"

namespace euler1d {

namespace {

namespace fs = std::filesystem;

struct Prepared {
  GasConstants gas;
  Solver solver;
  FieldState initial;
};

Prepared prepare(const RunConfig& config) {
  validate(config);
  const auto gas = config.scenario.gas.constants();
  const auto data = generate(config.scenario);
  if (auto warning = far_field_warning(config.scenario, data)) spdlog::warn("{}", *warning);
  Solver solver(gas, config.scenario.grid, config.numerics);
  auto initial = make_initial_state(data, config.numerics.stencil_order);
  const auto hyp = check_hypotheses(initial, solver);
  for (const auto& f : hyp.failures) spdlog::warn("initial data: {}", f);
  return {gas, std::move(solver), std::move(initial)};
}

CertifyOptions certify_options(const RunConfig& config) {
  CertifyOptions o;
  o.bounds.margin = config.diagnostics.margin;
  o.bounds.M_override = config.diagnostics.M_override;
  o.fit_t_a = config.diagnostics.fit_t_a;
  o.fit_t_b = config.diagnostics.fit_t_b;
  return o;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_resolved_config(const RunConfig& config, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  write_text(out_dir / "config.resolved.json", to_json(config).dump(2) + "\n");
}

std::string verdict_lines(const Certificate& cert) {
  std::ostringstream os;
  os << "invariant domain max{alpha,beta} < M: " << (cert.invariant.violated ? "VIOLATED" : "ok")
     << " (worst ratio " << cert.invariant.worst_ratio << ")\n";
  os << "density floor min rho >= C_1/(1+t): " << (cert.floor.ok ? "ok" : "VIOLATED")
     << " (C_1=" << cert.bounds.params.C_1 << ")\n";
  if (cert.fit) os << "decay exponent " << cert.fit->exponent << " over [" << cert.fit->t_a << ", " << cert.fit->t_b << "]\n";
  os << "termination: " << cert.termination << " at t=" << cert.end_time;
  return os.str();
}

template <class Body>
CommandResult guarded(Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    return {kExitFault, std::string("config error: ") + e.what()};
  } catch (const CertificationRefused& e) {
    return {kExitFault, e.what()};
  } catch (const std::exception& e) {
    return {kExitFault, e.what()};
  }
}

CommandResult run_and_certify(const RunConfig& config, const std::string& out_dir, int field_stride) {
  auto p = prepare(config);
  spdlog::info("running '{}' ({} cells, T={})", config.scenario.name, config.scenario.grid.n, config.scenario.horizon);
  const auto run = p.solver.run(p.initial, config.run_options());
  spdlog::info("run finished: {} at t={} after {} steps", to_string(run.reason), run.end_time, run.steps);
  if (run.reason == Termination::numerical_fault) return {kExitFault, "numerical fault: " + run.message};
  const auto cert = certify(run, p.solver, certify_options(config));
  ReportOptions ro;
  ro.field_stride = field_stride;
  emit_report(cert, run, p.solver, out_dir, ro);
  write_resolved_config(config, out_dir);
  return {cert.theorem_violation() ? kExitViolation : kExitOk, verdict_lines(cert)};
}

}  // namespace

CommandResult cmd_run(const RunConfig& config, const std::string& out_dir) {
  return guarded([&] { return run_and_certify(config, out_dir, config.diagnostics.field_stride); });
}

CommandResult cmd_certify(const RunConfig& config, const std::string& out_dir) {
  return guarded([&] { return run_and_certify(config, out_dir, 0); });
}

OracleStudy oracle_study(const RunConfig& config, int n) {
  RunConfig cfg = config;
  cfg.scenario.grid.n = n;
  cfg.scenario.horizon = std::min(cfg.scenario.horizon, cfg.diagnostics.oracle_horizon);
  auto p = prepare(cfg);
  double c_max = 0.0;
  for (std::size_t i = 0; i < p.initial.size(); ++i) {
    c_max = std::max(c_max, sound_speed(p.initial.eta[i], p.initial.m()[i], p.gas));
  }
  cfg.scenario.snapshot_interval = std::min(cfg.scenario.snapshot_interval, 1.5 * cfg.scenario.grid.dx() / c_max);
  const auto run = p.solver.run(p.initial, cfg.run_options());
  if (run.reason == Termination::numerical_fault) throw NumericalFault(run.message);

  OracleStudy study;
  study.n = n;
  study.dx = cfg.scenario.grid.dx();
  study.snapshot_interval = cfg.scenario.snapshot_interval;
  study.lambda = measure_bounds(run, p.solver).params.lambda;

  const RunInterpolator field(run, p.solver);
  for (double x0 : cfg.diagnostics.trace_seeds) {
    for (Direction dir : {Direction::forward, Direction::backward}) {
      const auto tr = trace(field, x0, cfg.diagnostics.trace_start, dir, cfg.diagnostics.path_tolerance);
      const bool fwd = dir == Direction::forward;
      const auto& start = tr.nodes.front();
      const auto tilde = oracle_integrate(tr, fwd ? start.alpha_tilde : start.beta_tilde,
                                          fwd ? OracleQuantity::alpha_tilde : OracleQuantity::beta_tilde, p.gas);
      const double lam = study.lambda;
      const auto shifted =
          oracle_integrate(tr, (fwd ? start.alpha_tilde : start.beta_tilde) + lam * start.eta,
                           fwd ? OracleQuantity::alpha : OracleQuantity::beta, p.gas, lam);
      TraceDiscrepancy d;
      d.direction = dir;
      d.x0 = x0;
      d.nodes = tr.nodes.size();
      d.truncated = tr.truncated;
      d.blew_up = tilde.blew_up || shifted.blew_up;
      d.tilde = relative_discrepancy(tilde);
      d.transformed = relative_discrepancy(shifted);
      study.max_tilde = std::max(study.max_tilde, d.tilde);
      study.max_transformed = std::max(study.max_transformed, d.transformed);
      (fwd ? study.forward_traces : study.backward_traces)++;
      study.traces.push_back(d);
    }
  }
  return study;
}

CommandResult cmd_oracle(const RunConfig& config, const std::string& out_dir) {
  return guarded([&]() -> CommandResult {
    validate(config);
    const int n = config.scenario.grid.n;
    if (n / 2 < 16) return {kExitFault, "grid.n too small for a half-resolution rerun"};
    const auto base = oracle_study(config, n);
    const auto coarse = oracle_study(config, n / 2);

    // Identically vanishing discrepancies (constant states) pass trivially.
    constexpr double kTrivial = 1e-12;
    auto improves = [&](double fine, double rough) {
      return fine <= kTrivial || rough >= config.diagnostics.oracle_improvement * fine;
    };
    const double thr = config.diagnostics.oracle_threshold;
    const bool within = base.max_tilde <= thr && base.max_transformed <= thr;
    const bool converging =
        improves(base.max_tilde, coarse.max_tilde) && improves(base.max_transformed, coarse.max_transformed);
    const bool blowups = std::any_of(base.traces.begin(), base.traces.end(), [](auto& t) { return t.blew_up; });

    nlohmann::ordered_json j;
    auto study_json = [](const OracleStudy& s) {
      nlohmann::ordered_json o;
      o["n"] = s.n;
      o["dx"] = s.dx;
      o["snapshot_interval"] = s.snapshot_interval;
      o["lambda"] = s.lambda;
      o["max_tilde"] = s.max_tilde;
      o["max_transformed"] = s.max_transformed;
      o["forward_traces"] = s.forward_traces;
      o["backward_traces"] = s.backward_traces;
      auto arr = nlohmann::ordered_json::array();
      for (const auto& t : s.traces) {
        arr.push_back({{"direction", to_string(t.direction)},
                       {"x0", t.x0},
                       {"nodes", t.nodes},
                       {"truncated", t.truncated},
                       {"blew_up", t.blew_up},
                       {"tilde", t.tilde},
                       {"transformed", t.transformed}});
      }
      o["traces"] = arr;
      return o;
    };
    j["base"] = study_json(base);
    j["half_resolution"] = study_json(coarse);
    j["threshold"] = thr;
    j["required_improvement"] = config.diagnostics.oracle_improvement;
    j["ratio_tilde"] = base.max_tilde > 0.0 ? coarse.max_tilde / base.max_tilde : 0.0;
    j["ratio_transformed"] = base.max_transformed > 0.0 ? coarse.max_transformed / base.max_transformed : 0.0;
    j["within_threshold"] = within;
    j["converging"] = converging;
    fs::create_directories(out_dir);
    write_text(fs::path(out_dir) / "oracle.json", j.dump(2) + "\n");
    write_resolved_config(config, out_dir);

    std::ostringstream os;
    os << "oracle discrepancy (base n=" << base.n << "): tilde " << base.max_tilde << ", transformed "
       << base.max_transformed << "; half resolution: " << coarse.max_tilde << ", " << coarse.max_transformed;
    if (blowups) os << "; oracle blowup on some trace";
    const bool pass = within && converging && !blowups;
    return {pass ? kExitOk : kExitViolation, os.str()};
  });
}

CommandResult cmd_sweep(const nlohmann::json& base_config, const std::string& parameter,
                        const std::vector<std::string>& values, const std::string& out_dir, int jobs) {
  if (values.empty()) return {kExitFault, "sweep needs at least one value"};
  if (jobs < 1) return {kExitFault, "--jobs must be at least 1"};

  struct Item {
    std::string value;
    RunConfig config;
    fs::path dir;
    CommandResult result;
  };
  std::vector<Item> items;
  try {
    for (const auto& v : values) {
      nlohmann::json doc = base_config;
      apply_override(doc, parameter + "=" + v);
      Item it;
      it.value = v;
      it.config = parse_config(doc);
      validate(it.config);
      std::string leaf = parameter + "=" + v;
      std::replace(leaf.begin(), leaf.end(), '/', '_');
      it.dir = fs::path(out_dir) / leaf;
      items.push_back(std::move(it));
    }
  } catch (const std::exception& e) {
    return {kExitFault, std::string("config error: ") + e.what()};
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < items.size(); k = next++) {
      items[k].result = cmd_run(items[k].config, items[k].dir.string());
    }
  };
  std::vector<std::thread> pool;
  const int workers = std::min<int>(jobs, static_cast<int>(items.size()));
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = kExitOk;
  std::ostringstream summary;
  summary << "value,exit_code\n";
  std::ostringstream msg;
  for (const auto& it : items) {
    summary << it.value << ',' << it.result.exit_code << '\n';
    if (it.result.exit_code == kExitFault) code = kExitFault;
    if (it.result.exit_code == kExitViolation && code == kExitOk) code = kExitViolation;
    msg << parameter << "=" << it.value << ": exit " << it.result.exit_code;
    if (it.result.exit_code == kExitFault) msg << " (" << it.result.message << ")";
    msg << '\n';
  }
  try {
    fs::create_directories(out_dir);
    write_text(fs::path(out_dir) / "sweep.csv", summary.str());
  } catch (const std::exception& e) {
    return {kExitFault, e.what()};
  }
  return {code, msg.str()};
}

}  // namespace euler1d
