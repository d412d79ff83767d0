#pragma once

#include <span>
#include <vector>

namespace euler1d {

/// Local rarefaction/compression character of one family.
enum class Character { rarefaction, compression, neutral };

struct RcCharacter {
  Character forward;
  Character backward;
};

/// Strict sign rules: R iff > 0, C iff < 0, neutral at exactly zero.
RcCharacter rc_character(double alpha_tilde, double beta_tilde);

const char* to_string(Character c);

struct TildeGradients {
  std::vector<double> alpha_tilde;
  std::vector<double> beta_tilde;
};

/// alpha~ = u_x + m eta_x + ((gamma-1)/gamma) m_x eta, beta~ with the signs
/// of the last two terms flipped. Throws std::invalid_argument on length
/// mismatch.
TildeGradients tilde_gradients(std::span<const double> u_x, std::span<const double> eta_x,
                               std::span<const double> m_x, std::span<const double> eta,
                               std::span<const double> m, double gamma);

struct GradientField {
  std::vector<double> u_x;
  std::vector<double> eta_x;
  std::vector<double> m_x;
  std::vector<double> alpha_tilde;
  std::vector<double> beta_tilde;
  std::vector<double> alpha;  // alpha~ + lambda eta
  std::vector<double> beta;   // beta~ + lambda eta
};

GradientField make_gradient_field(std::vector<double> u_x, std::vector<double> eta_x,
                                  std::vector<double> m_x, std::span<const double> eta,
                                  std::span<const double> m, double gamma, double lambda);

struct BoundConstants {
  double M_star;
  double lambda;
};

/// M* = 4 M_eta M_D max{2(g-1)/g, ((3g-1)/(g+1))(4/g)} and
/// lambda = M*/(4 M_eta) (g+1)/(3g-1).
BoundConstants bound_constants(double gamma, double M_eta, double M_D);

/// The M_eta-free closed form of lambda, used to cross-check bound_constants.
double lambda_closed_form(double gamma, double M_D);

/// Constant of the growth bound d+alpha <= K_1 M (M - alpha):
/// K_1 = 5(g+1)/(8(g-1)) K_c M_eta^(2/(g-1)).
double growth_constant_K1(double gamma, double K_c, double M_eta);

/// C_1 = 1/max(tau_max0, M), so that 1/(tau_max0 + M t) >= C_1/(1+t).
double density_floor_constant(double tau_max0, double M);

/// Invariant-domain level: max(M*, (1+margin) initial_max, margin scale), with
/// scale the largest initial |alpha|, |beta|. The last term keeps M off the
/// roundoff floor when initial_max is ~0 (compressive data). If the result still
/// does not exceed initial_max, the level is max(M*, margin max(|initial_max|, 1)).
double choose_invariant_level(double M_star, double initial_max, double margin, double scale = 0.0);

/// V = integral |m'|/m dx, evaluated as the total variation of log m on the grid.
double log_total_variation(std::span<const double> m);

struct BoundParams {
  double gamma = 0.0;
  double M_L = 0.0;
  double M_U = 0.0;
  double M_D = 0.0;
  double M_eta = 0.0;
  double M_star = 0.0;
  double lambda = 0.0;
  double M = 0.0;
  double K_1 = 0.0;
  double C_1 = 0.0;
  double V = 0.0;
  double M_sbar = 0.0;
  double M_rbar = 0.0;
  double tau_max0 = 0.0;
};

}  // namespace euler1d
