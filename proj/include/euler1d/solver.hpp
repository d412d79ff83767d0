#pragma once

// Method-of-lines integrator for the Lagrangian system
//
//   eta_t + (c/m) u_x = 0
//   u_t + m c eta_x + 2 (p/m) m_x = 0
//   m_t = 0
//
// Central differences (order 2 or 4) in space, classical RK4 in time.

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "euler1d/gradients.hpp"
#include "euler1d/thermo.hpp"

namespace euler1d {

inline constexpr int kGhostCells = 3;

enum class Boundary { periodic, frozen };

const char* to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

/// Uniform grid of n cells on [x_min, x_max]; samples sit at cell centres.
struct Grid {
  double x_min = -100.0;
  double x_max = 100.0;
  int n = 4096;
  Boundary boundary = Boundary::frozen;

  double dx() const { return (x_max - x_min) / n; }
  double x(int i) const { return x_min + (i + 0.5) * dx(); }
  double length() const { return x_max - x_min; }
  /// Throws std::invalid_argument unless n >= 16 and x_max > x_min.
  void validate() const;
};

/// Values held in the ghost cells of a frozen far-field boundary.
/// left[k] sits at cell -1-k, right[k] at cell n+k.
struct GhostValues {
  std::array<double, kGhostCells> left{};
  std::array<double, kGhostCells> right{};
};

/// Time-independent part of a run: the entropy variable and its gradient.
struct StaticField {
  std::vector<double> m;
  std::vector<double> m_x;
  GhostValues m_ghost;
  GhostValues u_ghost;
  GhostValues eta_ghost;
};

struct FieldState {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> eta;
  std::shared_ptr<const StaticField> statics;

  std::size_t size() const { return u.size(); }
  std::span<const double> m() const { return statics->m; }
  std::span<const double> m_x() const { return statics->m_x; }
};

/// Initial profiles sampled on the interior and on the ghost cells.
struct InitialData {
  Grid grid;
  std::vector<double> u;
  std::vector<double> eta;
  std::vector<double> m;
  GhostValues u_ghost;
  GhostValues eta_ghost;
  GhostValues m_ghost;
};

using Profile = std::function<double(double)>;

InitialData sample_profiles(const Grid& grid, const Profile& u, const Profile& eta, const Profile& m);

/// Central first derivatives and sixth differences under the grid's boundary rule.
class Differencer {
 public:
  Differencer(Grid grid, int order);

  std::vector<double> derivative(std::span<const double> f, const GhostValues& ghosts) const;
  /// Undivided sixth difference delta^6 f.
  std::vector<double> sixth_difference(std::span<const double> f, const GhostValues& ghosts) const;

  const Grid& grid() const { return grid_; }
  int order() const { return order_; }

 private:
  std::vector<double> extend(std::span<const double> f, const GhostValues& ghosts) const;

  Grid grid_;
  int order_;
};

struct Numerics {
  int stencil_order = 4;
  double cfl = 0.4;
  /// Coefficient of sixth-order (Kreiss-Oliger) hyperdissipation; 0 disables it.
  double hyperdissipation = 0.0;

  void validate() const;
};

/// Builds the t = 0 state; m_x is differenced once with the run's stencil and frozen.
FieldState make_initial_state(const InitialData& data, int stencil_order);

class NumericalFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Rates {
  std::vector<double> deta_dt;
  std::vector<double> du_dt;
};

enum class Termination { horizon, smoothness_lost, vacuum, numerical_fault };

const char* to_string(Termination t);

struct RunOptions {
  double horizon = 10.0;
  double snapshot_interval = 1.0;
  /// Shock monitor: fires once min(alpha~, beta~) < -threshold.
  double smoothness_threshold = 1.0e3;
  /// Terminate when min eta falls below this fraction of its initial minimum.
  double vacuum_fraction = 1.0e-6;

  void validate() const;
};

struct RunResult {
  Grid grid;
  Numerics numerics;
  std::vector<FieldState> snapshots;
  /// Running maximum of max_x u_x over every accepted step up to each snapshot.
  std::vector<double> running_max_u_x;
  FieldState final_state;
  Termination reason = Termination::horizon;
  double end_time = 0.0;
  std::size_t steps = 0;
  std::string message;
};

/// ok unless min(alpha~, beta~) < -threshold (strict) or some |u_x|, |eta_x|
/// exceeds 1/(10 dx).
bool smoothness_monitor(const GradientField& g, double threshold, double dx);

class Solver {
 public:
  Solver(GasConstants gas, Grid grid, Numerics numerics = {});

  const GasConstants& gas() const { return gas_; }
  const Grid& grid() const { return grid_; }
  const Numerics& numerics() const { return numerics_; }
  const Differencer& differencer() const { return diff_; }

  /// Throws NumericalFault on non-finite rates.
  Rates rhs(const FieldState& state) const;

  /// CFL * dx / max c.
  double stable_dt(const FieldState& state) const;

  /// One classical RK4 step; dt may be negative. Throws std::invalid_argument
  /// when |dt| exceeds stable_dt and NumericalFault on a non-finite result.
  FieldState step(const FieldState& state, double dt) const;

  /// Integrates to the horizon or until a monitor fires; never throws for
  /// numerical trouble, which is reported through RunResult::reason.
  RunResult run(const FieldState& initial, const RunOptions& options) const;

  GradientField gradients(const FieldState& state, double lambda = 0.0) const;

 private:
  GasConstants gas_;
  Grid grid_;
  Numerics numerics_;
  Differencer diff_;
};

/// Diagnostic integrator for the conservative form tau_t = u_x, u_t = -p_x,
/// (u^2/2 + e)_t = -(u p)_x on a periodic grid, with the same stencil and RK4.
class ConservativeIntegrator {
 public:
  struct State {
    double t = 0.0;
    std::vector<double> tau;
    std::vector<double> u;
    std::vector<double> energy;  // u^2/2 + e
  };

  ConservativeIntegrator(GasConstants gas, Grid grid, int stencil_order);

  State from_field(const FieldState& s) const;
  State step(const State& s, double dt) const;
  std::vector<double> pressure(const State& s) const;
  std::vector<double> entropy(const State& s) const;

 private:
  State rates(const State& s) const;

  GasConstants gas_;
  Differencer diff_;
};

}  // namespace euler1d
