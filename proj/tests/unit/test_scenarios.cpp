#include <catch_amalgamated.hpp>

#include <cmath>

#include "euler1d/scenarios.hpp"

using namespace euler1d;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const GasConstants kGas3(3.0, 1.0 / 3.0);

Grid odd_grid(int n = 4095, double half = 100.0) {
  Grid g;
  g.x_min = -half;
  g.x_max = half;
  g.n = n;
  return g;
}

double min_rho(const FieldState& s, const GasConstants& gas) {
  double r = 1e300;
  for (double eta : s.eta) r = std::min(r, 1.0 / tau_from_eta(eta, gas));
  return r;
}

RunResult run_for(const InitialData& data, double horizon, double interval) {
  const Solver solver(kGas3, data.grid);
  RunOptions o;
  o.horizon = horizon;
  o.snapshot_interval = interval;
  return solver.run(make_initial_state(data, 4), o);
}

}  // namespace

TEST_CASE("scenario kinds round-trip through strings") {
  for (auto k : {ScenarioKind::constant, ScenarioKind::rarefaction, ScenarioKind::nonisentropic,
                 ScenarioKind::compressive, ScenarioKind::periodic_wave}) {
    CHECK(scenario_kind_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(scenario_kind_from_string("shock"), std::invalid_argument);
}

TEST_CASE("background eta defaults to tau = 1") {
  ScenarioSpec spec;
  spec.gas = {1.4, 1.0, 1.0};
  CHECK_THAT(tau_from_eta(spec.background_eta(), spec.gas.constants()), WithinRel(1.0, 1e-14));
  spec.eta0 = 0.7;
  CHECK(spec.background_eta() == 0.7);
}

TEST_CASE("constant state is a fixed point with zero gradients") {
  const auto g = odd_grid(256);
  const Solver solver(kGas3, g);
  const auto s = make_initial_state(constant_state(0.0, 1.0, 1.0, g), 4);
  const auto grad = solver.gradients(s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(grad.alpha_tilde[i] == 0.0);
    CHECK(grad.beta_tilde[i] == 0.0);
  }
  const auto next = solver.step(s, solver.stable_dt(s));
  CHECK(next.u == s.u);
  CHECK(next.eta == s.eta);
}

TEST_CASE("a uniform velocity shift leaves the dynamics unchanged") {
  const auto g = odd_grid(256);
  const Solver solver(kGas3, g);
  const auto a = solver.rhs(make_initial_state(constant_state(0.0, 1.0, 1.0, g), 4));
  const auto b = solver.rhs(make_initial_state(constant_state(5.0, 1.0, 1.0, g), 4));
  CHECK(a.du_dt == b.du_dt);
  CHECK(a.deta_dt == b.deta_dt);
  const auto ra = make_initial_state(rarefaction_interaction(1.0, 5.0, 1.0, 1.0, g), 4);
  auto rb = ra;
  for (auto& u : rb.u) u += 5.0;
  auto rb_statics = std::make_shared<StaticField>(*ra.statics);
  for (auto& v : rb_statics->u_ghost.left) v += 5.0;
  for (auto& v : rb_statics->u_ghost.right) v += 5.0;
  rb.statics = rb_statics;
  const auto x = solver.rhs(ra), y = solver.rhs(rb);
  for (std::size_t i = 0; i < x.du_dt.size(); ++i) {
    CHECK_THAT(x.du_dt[i], WithinAbs(y.du_dt[i], 1e-12));
    CHECK_THAT(x.deta_dt[i], WithinAbs(y.deta_dt[i], 1e-12));
  }
}

TEST_CASE("sound speed of the eta = 2 constant state") {
  const auto g = odd_grid(64);
  const auto d = constant_state(0.0, 2.0, 1.0, g);
  for (std::size_t i = 0; i < d.eta.size(); ++i) CHECK_THAT(sound_speed(d.eta[i], d.m[i], kGas3), WithinRel(4.0, 1e-14));
}

TEST_CASE("rarefaction data have alpha~ = beta~ = (A/w) sech^2(x/w)") {
  const auto g = odd_grid(4096);
  const Solver solver(kGas3, g);
  const auto s = make_initial_state(rarefaction_interaction(2.0, 5.0, 1.0, 1.0, g), 4);
  const auto grad = solver.gradients(s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double sech = 1.0 / std::cosh(g.x(static_cast<int>(i)) / 5.0);
    CHECK_THAT(grad.alpha_tilde[i], WithinAbs(0.4 * sech * sech, 1e-6));
    CHECK(grad.alpha_tilde[i] == grad.beta_tilde[i]);
    CHECK(grad.alpha_tilde[i] >= -1e-12);  // roundoff where tanh saturates
  }
}

TEST_CASE("vacuum threshold on the rarefaction amplitude") {
  CHECK(approaches_vacuum(2.0, 1.0, 1.0));
  CHECK(approaches_vacuum(1.0, 1.0, 1.0));
  CHECK_FALSE(approaches_vacuum(0.1, 1.0, 1.0));
}

TEST_CASE("weak rarefaction: min density settles to a positive constant") {
  const auto run = run_for(rarefaction_interaction(0.1, 5.0, 1.0, 1.0, odd_grid(2048)), 100.0, 10.0);
  REQUIRE(run.reason == Termination::horizon);
  const double late = min_rho(run.snapshots.back(), kGas3);
  const double mid = min_rho(run.snapshots[run.snapshots.size() - 4], kGas3);
  CHECK(late > 0.5);
  CHECK_THAT(late, WithinRel(mid, 1e-3));
}

TEST_CASE("strong rarefaction: min density decays toward zero") {
  const auto run = run_for(rarefaction_interaction(2.0, 5.0, 1.0, 1.0, odd_grid(2048)), 200.0, 20.0);
  REQUIRE(run.reason == Termination::horizon);
  double prev = 1e300;
  for (std::size_t k = 1; k < run.snapshots.size(); ++k) {
    const double r = min_rho(run.snapshots[k], kGas3);
    CHECK(r < prev);
    prev = r;
  }
  CHECK(prev < 0.05);
}

TEST_CASE("nonisentropic data at zero entropy amplitude reduce to the rarefaction") {
  const auto g = odd_grid(512);
  const auto a = nonisentropic_smooth(0.0, 10.0, 2.0, 5.0, 1.0, 1.0, g);
  const auto b = rarefaction_interaction(2.0, 5.0, 1.0, 1.0, g);
  CHECK(a.u == b.u);
  CHECK(a.eta == b.eta);
  CHECK(a.m == b.m);
}

TEST_CASE("nonisentropic bounds") {
  const auto g = odd_grid(4095);
  const Solver solver(kGas3, g);
  const auto s = make_initial_state(nonisentropic_smooth(0.5, 10.0, 2.0, 5.0, 1.0, 1.0, g), 4);
  const auto h = check_hypotheses(s, solver);
  CHECK(h.satisfied);
  CHECK_THAT(h.M_L, WithinRel(std::exp(-0.25), 1e-7));
  CHECK_THAT(h.M_U, WithinRel(std::exp(0.25), 1e-7));
  CHECK_THAT(h.V, WithinRel(0.5, 1e-7));
  const std::size_t mid = (g.n - 1) / 2;
  REQUIRE(std::abs(g.x(static_cast<int>(mid))) < 1e-12);
  CHECK_THAT(s.m_x()[mid], WithinRel(0.025, 1e-8));
}

TEST_CASE("compressive data start at -A/w in the centre") {
  const auto g = odd_grid(4095);
  const Solver solver(kGas3, g);
  const auto s = make_initial_state(compressive(2.0, 5.0, 1.0, 1.0, g), 4);
  const auto grad = solver.gradients(s);
  const std::size_t mid = (g.n - 1) / 2;
  CHECK_THAT(grad.alpha_tilde[mid], WithinAbs(-0.4, 1e-8));
  CHECK_THAT(grad.beta_tilde[mid], WithinAbs(-0.4, 1e-8));
  const auto rc = rc_character(grad.alpha_tilde[mid], grad.beta_tilde[mid]);
  CHECK(rc.forward == Character::compression);
  CHECK(rc.backward == Character::compression);
}

TEST_CASE("compressive blowup time grows as the amplitude shrinks") {
  double prev = 0.0;
  for (double A : {4.0, 2.0, 1.0, 0.5}) {
    const auto run = run_for(compressive(A, 5.0, 1.0, 1.0, odd_grid(2048, 50.0)), 40.0, 0.5);
    REQUIRE(run.reason == Termination::smoothness_lost);
    CHECK(run.end_time > prev);
    prev = run.end_time;
  }
}

TEST_CASE("every generated scenario meets the existence hypotheses") {
  for (auto kind : {ScenarioKind::constant, ScenarioKind::rarefaction, ScenarioKind::nonisentropic,
                    ScenarioKind::compressive, ScenarioKind::periodic_wave}) {
    for (double gamma : {1.4, 5.0 / 3.0, 2.0, 3.0}) {
      ScenarioSpec spec;
      spec.kind = kind;
      spec.gas = {gamma, 1.0, 1.0};
      spec.grid = odd_grid(512);
      if (kind == ScenarioKind::periodic_wave) spec.grid.boundary = Boundary::periodic;
      const auto data = generate(spec);
      const auto s = make_initial_state(data, 4);
      const auto h = check_hypotheses(s, Solver(spec.gas.constants(), spec.grid));
      INFO(to_string(kind) << " gamma=" << gamma);
      CHECK(h.satisfied);
      CHECK(h.eta_min > 0.0);
      CHECK(std::isfinite(h.V));
    }
  }
}

TEST_CASE("generators reject invalid parameters") {
  const auto g = odd_grid(64);
  CHECK_THROWS_AS(constant_state(0.0, 0.0, 1.0, g), std::domain_error);
  CHECK_THROWS_AS(rarefaction_interaction(2.0, 0.0, 1.0, 1.0, g), std::domain_error);
  CHECK_THROWS_AS(compressive(2.0, 5.0, 1.0, -1.0, g), std::domain_error);
}

TEST_CASE("far-field margin warning") {
  ScenarioSpec spec;
  spec.gas = {3.0, 1.0 / 3.0, 1.0};
  spec.horizon = 200.0;
  const auto data = generate(spec);
  CHECK(far_field_warning(spec, data).has_value());
  spec.horizon = 10.0;
  CHECK_FALSE(far_field_warning(spec, data).has_value());
}
