#pragma once

// Polytropic gas closure in the (u, eta, m) representation.
//
//   tau = K_tau eta^(-2/(gamma-1))
//   p   = K_p m^2 eta^(2 gamma/(gamma-1))
//   c   = K_c m eta^((gamma+1)/(gamma-1))
//
// with m = exp(S / (2 c_v)). All thermodynamic views (tau, rho, p, S, e) are
// derived from (eta, m) on demand.

namespace euler1d {

struct DerivedScales {
  double K_tau;
  double K_p;
  double K_c;
};

/// K_tau, K_p and K_c for a polytropic gas p = K e^(S/c_v) tau^-gamma.
/// Throws std::domain_error unless gamma > 1 and K > 0.
DerivedScales derive_constants(double gamma, double K);

class GasConstants {
 public:
  GasConstants(double gamma, double K, double c_v = 1.0);

  double gamma() const { return gamma_; }
  double K() const { return K_; }
  double c_v() const { return c_v_; }
  double K_tau() const { return scales_.K_tau; }
  double K_p() const { return scales_.K_p; }
  double K_c() const { return scales_.K_c; }

  /// 2/(gamma-1); the exponents of tau, p and c all follow from it.
  double eta_power() const { return eta_power_; }
  /// 2 sqrt(K gamma)/(gamma-1), the prefactor in eta(tau).
  double eta_prefactor() const { return eta_prefactor_; }

 private:
  double gamma_;
  double K_;
  double c_v_;
  DerivedScales scales_;
  double eta_power_;
  double eta_prefactor_;
};

double eta_from_tau(double tau, const GasConstants& gas);
double tau_from_eta(double eta, const GasConstants& gas);

double m_from_S(double S, double c_v);
double S_from_m(double m, double c_v);

// Hot-path kernels; callers guarantee eta > 0.
inline double sound_speed_unchecked(double eta, double m, double eta_pow, const GasConstants& gas) {
  return gas.K_c() * m * eta * eta_pow;
}
inline double pressure_unchecked(double eta, double m, double eta_pow, const GasConstants& gas) {
  return gas.K_p() * m * m * eta * eta * eta_pow;
}

double sound_speed(double eta, double m, const GasConstants& gas);
double pressure(double eta, double m, const GasConstants& gas);

struct ThermoPoint {
  double u;
  double eta;
  double m;
  double tau;
  double rho;
  double p;
  double c;
  double r;  // u - m eta
  double s;  // u + m eta

  double entropy(const GasConstants& gas) const { return S_from_m(m, gas.c_v()); }
  double internal_energy(const GasConstants& gas) const { return p * tau / (gas.gamma() - 1.0); }
};

/// Throws std::domain_error on eta <= 0 or m <= 0.
ThermoPoint thermo_point(double u, double eta, double m, const GasConstants& gas);

}  // namespace euler1d
