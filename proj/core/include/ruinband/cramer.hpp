#pragma once

#include "ruinband/models.hpp"

namespace ruinband {

// Which evaluation path to use for mu_theta and the Laplace transform of
// grad g at -gamma. Quadrature works for every family; closed forms exist
// only for the exponential-claim families.
enum class Route { Quadrature, ClosedForm };

struct CramerSummary {
  double gamma = 0.0;
  double constant = 0.0;  // C_theta
  double mu_theta = 0.0;  // mean of the tilted ladder density
  ThetaVector laplace_grad_g = ThetaVector::Zero();
  ThetaVector zeta = ThetaVector::Zero();  // C_theta * laplace_grad_g / mu_theta
};

/// C = (c - m) / (int z e^{gamma z} nu(dz) - c + 2 D gamma).
/// Errors: MomentDiverges when gamma >= pole.
double cramer_constant(const ModelSpec& model, double gamma);
/// Family-specific display: lambda mu / c (classical) or
/// (c - lambda mu) / (lambda mu (1 - mu gamma)^-2 - c + 2 D gamma) (perturbed).
/// Errors: DomainError for GammaSub.
double cramer_constant_closed_form(const ModelSpec& model, double gamma);

/// C e^{-gamma u}.
double psi_cramer(double constant, double gamma, double u);

/// int_0^inf e^{gamma x} g(x) dx; equals 1 when gamma solves kappa = 0.
double tilted_kernel_mass(const ModelSpec& model, double gamma);

/// int_0^inf x e^{gamma x} g(x) dx by adaptive quadrature.
double mu_theta(const ModelSpec& model, double gamma);
/// (int z e^{gamma z} nu - c + 2 D gamma) / (gamma (c - D gamma)), from
/// Fubini on the tilted kernel.
double mu_theta_closed_form(const ModelSpec& model, double gamma);

/// int_0^inf e^{gamma x} grad_g(x) dx componentwise by quadrature.
ThetaVector laplace_grad_g(const ModelSpec& model, double gamma);
/// Exponential-claim closed forms. For PerturbedExp, with
/// p_mu = (1/mu - gamma)^-1 and p_D = (c/D - gamma)^-1:
///   L_mu = lambda p_mu^2 / (mu (c mu - D)) - lambda D (p_mu - p_D) / (c mu - D)^2
///   L_lambda = mu (p_mu - p_D) / (c mu - D)
///   L_D = lambda mu (p_mu - p_D) / (c mu - D)^2 - lambda mu c p_D^2 / (D^2 (c mu - D))
/// Errors: DomainError for GammaSub or when c mu is within 1e-6 of D.
ThetaVector laplace_grad_g_closed_form(const ModelSpec& model, double gamma);
/// lambda mu (p_mu^2 - p_D^2) / (c mu - D); PerturbedExp only.
double perturbed_mu_theta_display(const ModelSpec& model, double gamma);

/// Solves the Lundberg equation and assembles every quantity above.
CramerSummary cramer_summary(const ModelSpec& model, Route route = Route::Quadrature);
CramerSummary cramer_summary(const ModelSpec& model, double gamma, Route route = Route::Quadrature);

ThetaVector zeta(const ModelSpec& model, Route route = Route::Quadrature);

/// zeta u e^{-gamma u}: leading behaviour of d psi / d theta.
ThetaVector dot_psi_asymptotic(const CramerSummary& summary, double u);
/// C (L/mu_theta)(L/mu_theta)' u^2 e^{-gamma u}: leading behaviour of the Hessian.
ThetaMatrix ddot_psi_asymptotic(const CramerSummary& summary, double u);

/// [zeta' Sigma* zeta]^{1/2}. Errors: NegativeQuadForm below -1e-14.
double sigma_star_prefactor(const CramerSummary& summary, const ThetaMatrix& sigma_star_matrix);
/// sigma_star_prefactor * u e^{-gamma u}.
double sigma_star(const CramerSummary& summary, const ThetaMatrix& sigma_star_matrix, double u);

}  // namespace ruinband
