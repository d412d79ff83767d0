#include "euler1d/thermo.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace euler1d {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::domain_error(std::string(what) + " must be positive and finite, got " + std::to_string(v));
  }
}

}  // namespace

DerivedScales derive_constants(double gamma, double K) {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw std::domain_error("gamma must exceed 1, got " + std::to_string(gamma));
  }
  require_positive(K, "K");
  const double sqrt_kg = std::sqrt(K * gamma);
  DerivedScales s{};
  s.K_tau = std::pow(2.0 * sqrt_kg / (gamma - 1.0), 2.0 / (gamma - 1.0));
  s.K_p = K * std::pow(s.K_tau, -gamma);
  s.K_c = sqrt_kg * std::pow(s.K_tau, -(gamma + 1.0) / 2.0);
  return s;
}

GasConstants::GasConstants(double gamma, double K, double c_v)
    : gamma_(gamma), K_(K), c_v_(c_v), scales_(derive_constants(gamma, K)) {
  require_positive(c_v, "c_v");
  eta_power_ = 2.0 / (gamma - 1.0);
  eta_prefactor_ = 2.0 * std::sqrt(K * gamma) / (gamma - 1.0);
}

double eta_from_tau(double tau, const GasConstants& gas) {
  require_positive(tau, "tau");
  return gas.eta_prefactor() * std::pow(tau, -(gas.gamma() - 1.0) / 2.0);
}

double tau_from_eta(double eta, const GasConstants& gas) {
  require_positive(eta, "eta");
  return gas.K_tau() * std::pow(eta, -gas.eta_power());
}

double m_from_S(double S, double c_v) {
  require_positive(c_v, "c_v");
  return std::exp(S / (2.0 * c_v));
}

double S_from_m(double m, double c_v) {
  require_positive(m, "m");
  require_positive(c_v, "c_v");
  return 2.0 * c_v * std::log(m);
}

double sound_speed(double eta, double m, const GasConstants& gas) {
  require_positive(eta, "eta");
  require_positive(m, "m");
  return sound_speed_unchecked(eta, m, std::pow(eta, gas.eta_power()), gas);
}

double pressure(double eta, double m, const GasConstants& gas) {
  require_positive(eta, "eta");
  require_positive(m, "m");
  return pressure_unchecked(eta, m, std::pow(eta, gas.eta_power()), gas);
}

ThermoPoint thermo_point(double u, double eta, double m, const GasConstants& gas) {
  require_positive(eta, "eta");
  require_positive(m, "m");
  const double eta_pow = std::pow(eta, gas.eta_power());
  ThermoPoint pt{};
  pt.u = u;
  pt.eta = eta;
  pt.m = m;
  pt.tau = gas.K_tau() / eta_pow;
  pt.rho = 1.0 / pt.tau;
  pt.p = pressure_unchecked(eta, m, eta_pow, gas);
  pt.c = sound_speed_unchecked(eta, m, eta_pow, gas);
  pt.r = u - m * eta;
  pt.s = u + m * eta;
  return pt;
}

}  // namespace euler1d
