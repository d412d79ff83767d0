#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <numeric>

#include "euler1d/characteristics.hpp"
#include "euler1d/scenarios.hpp"
#include "euler1d/solver.hpp"

using namespace euler1d;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const GasConstants kGas3(3.0, 1.0 / 3.0);

Grid periodic_grid(int n, double length = 2.0 * std::numbers::pi) {
  Grid g;
  g.x_min = 0.0;
  g.x_max = length;
  g.n = n;
  g.boundary = Boundary::periodic;
  return g;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double sum_dx(const std::vector<double>& f, double dx) { return std::accumulate(f.begin(), f.end(), 0.0) * dx; }

}  // namespace

TEST_CASE("grid geometry and validation") {
  Grid g;
  CHECK(g.dx() == 200.0 / 4096.0);
  CHECK_THAT(g.x(0), WithinRel(-100.0 + 0.5 * g.dx(), 1e-15));
  g.n = 8;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g.n = 16;
  g.x_max = g.x_min;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("fourth-order derivative of a periodic sine") {
  for (int order : {2, 4}) {
    double prev = 0.0;
    for (int n : {32, 64, 128}) {
      const auto g = periodic_grid(n);
      std::vector<double> f(n);
      for (int i = 0; i < n; ++i) f[i] = std::sin(g.x(i));
      const auto d = Differencer(g, order).derivative(f, {});
      double err = 0.0;
      for (int i = 0; i < n; ++i) err = std::max(err, std::abs(d[i] - std::cos(g.x(i))));
      if (prev > 0.0) CHECK(std::log2(prev / err) > order - 0.2);
      prev = err;
    }
  }
}

TEST_CASE("sixth difference of a periodic sine") {
  const auto g = periodic_grid(64);
  std::vector<double> f(64);
  for (int i = 0; i < 64; ++i) f[i] = std::sin(g.x(i));
  const auto d6 = Differencer(g, 4).sixth_difference(f, {});
  const double factor = -64.0 * std::pow(std::sin(0.5 * g.dx()), 6);
  for (int i = 0; i < 64; ++i) CHECK_THAT(d6[i], WithinAbs(factor * f[i], 1e-13));
}

TEST_CASE("hyperdissipation keeps constant states fixed and damps grid noise") {
  const auto g = periodic_grid(64);
  Numerics num;
  num.hyperdissipation = 0.5;
  const Solver solver(kGas3, g, num);
  const auto flat = make_initial_state(constant_state(0.0, 1.0, 1.0, g), 4);
  const auto r = solver.rhs(flat);
  for (std::size_t i = 0; i < flat.size(); ++i) CHECK(r.du_dt[i] == 0.0);
  auto data = constant_state(0.0, 1.0, 1.0, g);
  for (std::size_t i = 0; i < data.u.size(); ++i) data.u[i] = (i % 2 ? 1e-3 : -1e-3);
  const auto noisy = make_initial_state(data, 4);
  auto damped = noisy;
  for (int k = 0; k < 20; ++k) damped = solver.step(damped, solver.stable_dt(damped));
  double before = 0.0, after = 0.0;
  for (std::size_t i = 0; i < noisy.size(); ++i) before += noisy.u[i] * noisy.u[i], after += damped.u[i] * damped.u[i];
  CHECK(after < 0.5 * before);
}

TEST_CASE("rhs vanishes on a constant state") {
  Grid g;
  g.n = 64;
  const auto s = make_initial_state(constant_state(0.3, 1.2, 1.1, g), 4);
  const Solver solver(GasConstants(1.4, 1.0), g);
  const auto r = solver.rhs(s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(r.deta_dt[i] == 0.0);
    CHECK(r.du_dt[i] == 0.0);
  }
}

TEST_CASE("rhs for u = sin x on a uniform background") {
  const auto g = periodic_grid(256);
  const auto data = sample_profiles(
      g, [](double x) { return std::sin(x); }, [](double) { return 1.0; }, [](double) { return 1.0; });
  const auto s = make_initial_state(data, 4);
  const auto r = Solver(kGas3, g).rhs(s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK_THAT(r.deta_dt[i], WithinAbs(-std::cos(g.x(i)), 1e-7));
    CHECK_THAT(r.du_dt[i], WithinAbs(0.0, 1e-15));
  }
}

TEST_CASE("rhs for eta = 1 + 0.1 sin x at rest") {
  const auto g = periodic_grid(256);
  const auto data = sample_profiles(
      g, [](double) { return 0.0; }, [](double x) { return 1.0 + 0.1 * std::sin(x); }, [](double) { return 1.0; });
  const auto s = make_initial_state(data, 4);
  const auto r = Solver(kGas3, g).rhs(s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double eta = 1.0 + 0.1 * std::sin(g.x(i));
    CHECK_THAT(r.du_dt[i], WithinAbs(-eta * eta * 0.1 * std::cos(g.x(i)), 1e-7));
  }
  // x = 0 is a grid face; the exact value there is -m c eta_x = -0.1
  const Grid shifted = [&] {
    Grid h = g;
    h.x_min = -0.5 * g.dx();
    h.x_max = h.x_min + g.length();
    return h;
  }();
  const auto s0 = make_initial_state(sample_profiles(
                                         shifted, [](double) { return 0.0; },
                                         [](double x) { return 1.0 + 0.1 * std::sin(x); }, [](double) { return 1.0; }),
                                     4);
  const auto r0 = Solver(kGas3, shifted).rhs(s0);
  CHECK(std::abs(shifted.x(0)) < 1e-15);
  CHECK_THAT(r0.du_dt[0], WithinAbs(-0.1, 1e-8));
}

TEST_CASE("a constant state is a fixed point of the step") {
  Grid g;
  g.n = 64;
  const Solver solver(kGas3, g);
  const auto s = make_initial_state(constant_state(0.0, 1.0, 1.0, g), 4);
  const auto next = solver.step(s, solver.stable_dt(s));
  CHECK(next.u == s.u);
  CHECK(next.eta == s.eta);
  CHECK(next.t == solver.stable_dt(s));
}

TEST_CASE("RK4 forward-backward step has fifth-order local error") {
  const auto g = periodic_grid(32);
  const auto s = make_initial_state(periodic_wave(0.0, 0.3, 1.0, 1.0, g), 4);
  const Solver solver(kGas3, g);
  const double dt0 = solver.stable_dt(s);
  auto roundtrip_error = [&](double dt) {
    const auto back = solver.step(solver.step(s, dt), -dt);
    return std::max(max_abs_diff(back.u, s.u), max_abs_diff(back.eta, s.eta));
  };
  const double e1 = roundtrip_error(dt0), e2 = roundtrip_error(dt0 / 2), e3 = roundtrip_error(dt0 / 4);
  INFO("errors " << e1 << " " << e2 << " " << e3);
  CHECK(e3 > 1e-14);
  CHECK(std::log2(e1 / e2) >= 4.5);
  CHECK(std::log2(e2 / e3) >= 4.5);
}

TEST_CASE("steps above the CFL bound are refused") {
  Grid g;
  g.n = 64;
  const Solver solver(kGas3, g);
  const auto s = make_initial_state(rarefaction_interaction(2.0, 5.0, 1.0, 1.0, g), 4);
  CHECK_THROWS_AS(solver.step(s, 2.0 * solver.stable_dt(s)), std::invalid_argument);
  CHECK_NOTHROW(solver.step(s, solver.stable_dt(s)));
}

TEST_CASE("smoothness monitor") {
  GradientField g;
  g.u_x = g.eta_x = g.m_x = g.alpha_tilde = g.beta_tilde = g.alpha = g.beta = std::vector<double>(4, 0.0);
  CHECK(smoothness_monitor(g, 1e3, 0.01));
  g.alpha_tilde[2] = -1e6;
  CHECK_FALSE(smoothness_monitor(g, 1e3, 0.01));
  g.alpha_tilde[2] = -1e3;
  CHECK(smoothness_monitor(g, 1e3, 0.01));
  g.beta_tilde[1] = std::nan("");
  CHECK_FALSE(smoothness_monitor(g, 1e3, 0.01));
}

TEST_CASE("constant state runs to the horizon unchanged") {
  Grid g;
  g.n = 128;
  const Solver solver(kGas3, g);
  const auto s = make_initial_state(constant_state(0.0, 1.0, 1.0, g), 4);
  RunOptions o;
  o.horizon = 10.0;
  const auto run = solver.run(s, o);
  CHECK(run.reason == Termination::horizon);
  REQUIRE(run.snapshots.size() == 11);
  for (std::size_t k = 0; k < run.snapshots.size(); ++k) {
    CHECK(run.snapshots[k].t == static_cast<double>(k));
    CHECK(run.snapshots[k].u == s.u);
    CHECK(run.snapshots[k].eta == s.eta);
  }
}

TEST_CASE("entropy stays static and snapshot times increase") {
  Grid g;
  g.n = 512;
  const Solver solver(kGas3, g);
  const auto data = nonisentropic_smooth(0.5, 10.0, 1.0, 5.0, 1.0, 1.0, g);
  const auto s = make_initial_state(data, 4);
  RunOptions o;
  o.horizon = 5.0;
  o.snapshot_interval = 0.5;
  const auto run = solver.run(s, o);
  REQUIRE(run.reason == Termination::horizon);
  for (std::size_t k = 0; k < run.snapshots.size(); ++k) {
    CHECK(run.snapshots[k].statics == s.statics);
    CHECK(std::vector<double>(run.snapshots[k].m().begin(), run.snapshots[k].m().end()) == data.m);
    if (k > 0) CHECK(run.snapshots[k].t > run.snapshots[k - 1].t);
  }
}

TEST_CASE("compressive data lose smoothness near the Riccati blowup time") {
  Grid g;
  g.n = 4096;
  const Solver solver(kGas3, g);
  const auto s = make_initial_state(compressive(2.0, 5.0, 1.0, 1.0, g), 4);
  RunOptions o;
  o.horizon = 10.0;
  o.snapshot_interval = 0.5;
  const auto run = solver.run(s, o);
  // frozen coefficients at the steepest point: eta = 1, alpha~ = -A/w
  const double t_blow = frozen_blowup_time(1.0, -0.4, 10.0, kGas3);
  CHECK_THAT(t_blow, WithinRel(2.5, 1e-3));
  CHECK(run.reason == Termination::smoothness_lost);
  CHECK(std::abs(run.end_time - t_blow) <= 0.2 * t_blow);
}

TEST_CASE("rarefactive data reach T=200 without smoothness loss") {
  Grid g;
  g.n = 2048;
  const Solver solver(kGas3, g);
  const auto s = make_initial_state(rarefaction_interaction(2.0, 5.0, 1.0, 1.0, g), 4);
  RunOptions o;
  o.horizon = 200.0;
  o.snapshot_interval = 10.0;
  const auto run = solver.run(s, o);
  CHECK(run.reason == Termination::horizon);
  CHECK(run.end_time == 200.0);
}

TEST_CASE("periodic totals of u and tau drift by less than 1e-8 per unit time") {
  const auto g = periodic_grid(256, 20.0);
  const auto s = make_initial_state(periodic_wave(1.0, 0.2, 1.0, 1.0, g), 4);
  const Solver solver(kGas3, g);
  RunOptions o;
  o.horizon = 10.0;
  const auto run = solver.run(s, o);
  REQUIRE(run.reason == Termination::horizon);
  auto tau_of = [&](const FieldState& f) {
    std::vector<double> t(f.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = tau_from_eta(f.eta[i], kGas3);
    return t;
  };
  const double u0 = sum_dx(s.u, g.dx()), tau0 = sum_dx(tau_of(s), g.dx());
  for (const auto& snap : run.snapshots) {
    if (snap.t == 0.0) continue;
    const double du = std::abs(sum_dx(snap.u, g.dx()) - u0) / std::abs(u0) / snap.t;
    const double dtau = std::abs(sum_dx(tau_of(snap), g.dx()) - tau0) / std::abs(tau0) / snap.t;
    CHECK(du <= 1e-8);
    CHECK(dtau <= 1e-8);
  }
}

TEST_CASE("self-convergence of the fourth-order scheme") {
  auto final_u = [](int n) {
    const auto g = periodic_grid(n, 20.0);
    const Solver solver(kGas3, g);
    const auto s = make_initial_state(periodic_wave(0.0, 0.2, 1.0, 1.0, g), 4);
    FieldState st = s;
    // fixed dt across resolutions isolates the spatial order
    const double dt = 0.4 * (20.0 / 1024) / 1.5;
    const int steps = static_cast<int>(std::round(2.0 / dt));
    for (int k = 0; k < steps; ++k) st = solver.step(st, dt);
    return st.u;
  };
  const auto u1 = final_u(64), u2 = final_u(128), u4 = final_u(256);
  auto sample_diff = [](const std::vector<double>& coarse, int n_coarse, const std::vector<double>& fine) {
    // compare at coarse centres via 4th-order interpolation of the fine field
    const std::size_t nf = fine.size();
    double e = 0.0;
    for (int i = 0; i < n_coarse; ++i) {
      const long j = 2 * i;  // fine cells j, j+1 straddle the coarse centre
      auto at = [&](long k) { return fine[static_cast<std::size_t>((k + static_cast<long>(nf)) % static_cast<long>(nf))]; };
      const double v = (-at(j - 1) + 9.0 * at(j) + 9.0 * at(j + 1) - at(j + 2)) / 16.0;
      e = std::max(e, std::abs(coarse[static_cast<std::size_t>(i)] - v));
    }
    return e;
  };
  const double e12 = sample_diff(u1, 64, u2), e24 = sample_diff(u2, 128, u4);
  INFO("differences " << e12 << " " << e24);
  CHECK(std::log2(e12 / e24) >= 3.5);
}

TEST_CASE("pressure and entropy agree with an independent conservative integration") {
  const auto g = periodic_grid(256, 20.0);
  const auto s = make_initial_state(periodic_wave(0.0, 0.2, 1.0, 1.0, g), 4);
  const Solver solver(kGas3, g);
  const ConservativeIntegrator cons(kGas3, g, 4);
  FieldState a = s;
  auto b = cons.from_field(s);
  const double dt = 0.5 * solver.stable_dt(s);
  for (int k = 0; k < 200; ++k) {
    a = solver.step(a, dt);
    b = cons.step(b, dt);
  }
  const auto S = cons.entropy(b);
  const auto p = cons.pressure(b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK_THAT(S[i], WithinAbs(S_from_m(a.m()[i], kGas3.c_v()), 1e-6));
    CHECK_THAT(p[i], WithinRel(pressure(a.eta[i], a.m()[i], kGas3), 1e-6));
  }
}
