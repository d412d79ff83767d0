#include "euler1d/gradients.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace euler1d {

namespace {

Character classify(double v) {
  if (v > 0.0) return Character::rarefaction;
  if (v < 0.0) return Character::compression;
  return Character::neutral;
}

void check_gamma(double gamma) {
  if (!(gamma > 1.0)) throw std::domain_error("gamma must exceed 1, got " + std::to_string(gamma));
}

double bound_max_term(double gamma) {
  return std::max(2.0 * (gamma - 1.0) / gamma, (3.0 * gamma - 1.0) / (gamma + 1.0) * (4.0 / gamma));
}

}  // namespace

RcCharacter rc_character(double alpha_tilde, double beta_tilde) {
  return {classify(alpha_tilde), classify(beta_tilde)};
}

const char* to_string(Character c) {
  switch (c) {
    case Character::rarefaction: return "R";
    case Character::compression: return "C";
    case Character::neutral: return "neutral";
  }
  return "?";
}

TildeGradients tilde_gradients(std::span<const double> u_x, std::span<const double> eta_x,
                               std::span<const double> m_x, std::span<const double> eta,
                               std::span<const double> m, double gamma) {
  const std::size_t n = u_x.size();
  if (eta_x.size() != n || m_x.size() != n || eta.size() != n || m.size() != n) {
    throw std::invalid_argument("tilde_gradients: array length mismatch");
  }
  const double entropy_weight = (gamma - 1.0) / gamma;
  TildeGradients out;
  out.alpha_tilde.resize(n);
  out.beta_tilde.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double skew = m[i] * eta_x[i] + entropy_weight * m_x[i] * eta[i];
    out.alpha_tilde[i] = u_x[i] + skew;
    out.beta_tilde[i] = u_x[i] - skew;
  }
  return out;
}

GradientField make_gradient_field(std::vector<double> u_x, std::vector<double> eta_x,
                                  std::vector<double> m_x, std::span<const double> eta,
                                  std::span<const double> m, double gamma, double lambda) {
  auto tilde = tilde_gradients(u_x, eta_x, m_x, eta, m, gamma);
  GradientField g;
  g.alpha.resize(eta.size());
  g.beta.resize(eta.size());
  for (std::size_t i = 0; i < eta.size(); ++i) {
    g.alpha[i] = tilde.alpha_tilde[i] + lambda * eta[i];
    g.beta[i] = tilde.beta_tilde[i] + lambda * eta[i];
  }
  g.u_x = std::move(u_x);
  g.eta_x = std::move(eta_x);
  g.m_x = std::move(m_x);
  g.alpha_tilde = std::move(tilde.alpha_tilde);
  g.beta_tilde = std::move(tilde.beta_tilde);
  return g;
}

BoundConstants bound_constants(double gamma, double M_eta, double M_D) {
  check_gamma(gamma);
  if (!(M_eta > 0.0)) throw std::domain_error("M_eta must be positive");
  if (!(M_D >= 0.0)) throw std::domain_error("M_D must be non-negative");
  BoundConstants b{};
  b.M_star = 4.0 * M_eta * M_D * bound_max_term(gamma);
  b.lambda = b.M_star / (4.0 * M_eta) * (gamma + 1.0) / (3.0 * gamma - 1.0);
  return b;
}

double lambda_closed_form(double gamma, double M_D) {
  check_gamma(gamma);
  return (gamma + 1.0) / (3.0 * gamma - 1.0) * M_D * bound_max_term(gamma);
}

double growth_constant_K1(double gamma, double K_c, double M_eta) {
  check_gamma(gamma);
  return 5.0 * (gamma + 1.0) / (8.0 * (gamma - 1.0)) * K_c * std::pow(M_eta, 2.0 / (gamma - 1.0));
}

double density_floor_constant(double tau_max0, double M) {
  if (!(tau_max0 > 0.0)) throw std::domain_error("tau_max0 must be positive");
  if (!(M > 0.0)) throw std::domain_error("M must be positive");
  return 1.0 / std::max(tau_max0, M);
}

double choose_invariant_level(double M_star, double initial_max, double margin, double scale) {
  double M = std::max({M_star, (1.0 + margin) * initial_max, margin * std::abs(scale)});
  if (!(M > initial_max) || !(M > 0.0)) {
    M = std::max(M_star, margin * std::max(std::abs(initial_max), 1.0));
  }
  return M;
}

double log_total_variation(std::span<const double> m) {
  double v = 0.0;
  for (std::size_t i = 1; i < m.size(); ++i) v += std::abs(std::log(m[i]) - std::log(m[i - 1]));
  return v;
}

}  // namespace euler1d
