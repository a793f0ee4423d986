#include "ruinband/cramer.hpp"

#include <cmath>
#include <string>

#include "ruinband/error.hpp"
#include "ruinband/lundberg.hpp"
#include "ruinband/quadrature.hpp"

namespace ruinband {
namespace {

constexpr quad::Tolerance kTol{1e-14, 1e-12};

void require_gamma(const ModelSpec& model, double gamma) {
  if (!(gamma > 0.0) || gamma >= adjustment_upper_bound(model)) {
    throw Error(ErrorCode::MomentDiverges,
                "gamma = " + std::to_string(gamma) + " outside (0, min(c/D, pole))");
  }
}

// Integrates f over [0, inf) where f carries the tilted kernel.
double tilted_integral(const ModelSpec& model, double gamma, const quad::Integrand& f) {
  const double decay = kernel_decay_rate(model) - gamma;
  const bool singular = kernel_singular_at_zero(model);
  const double inner = singular ? 1.0 / model.b() : 0.0;
  return quad::integrate_decaying(f, 0.0, decay, singular, inner, kTol);
}

void require_non_resonant(const ModelSpec& model) {
  const double cm = model.premium() * model.mu();
  if (std::abs(cm - model.diffusion()) <= 1e-6 * cm) {
    throw Error(ErrorCode::DomainError, "closed form undefined at D = c mu");
  }
}

}  // namespace

double cramer_constant(const ModelSpec& model, double gamma) {
  if (!(gamma >= 0.0) || gamma >= mgf_pole(model)) {
    throw Error(ErrorCode::MomentDiverges, "int z e^{gamma z} nu(dz) diverges");
  }
  const double denom = tilted_jump_mean(model, gamma) - model.premium() +
                       2.0 * model.diffusion() * gamma;
  if (!(denom > 0.0)) throw Error(ErrorCode::DegenerateDenominator, "Cramer denominator <= 0");
  return (model.premium() - levy_mean(model)) / denom;
}

double cramer_constant_closed_form(const ModelSpec& model, double gamma) {
  const double c = model.premium();
  switch (model.family()) {
    case Family::ClassicalExp:
      return model.lambda() * model.mu() / c;
    case Family::PerturbedExp: {
      const double lm = model.lambda() * model.mu();
      const double s = 1.0 - model.mu() * gamma;
      return (c - lm) / (lm / (s * s) - c + 2.0 * model.diffusion() * gamma);
    }
    case Family::GammaSub:
      break;
  }
  throw Error(ErrorCode::DomainError, "no closed-form Cramer constant for gamma-sub");
}

double psi_cramer(double constant, double gamma, double u) { return constant * std::exp(-gamma * u); }

double tilted_kernel_mass(const ModelSpec& model, double gamma) {
  require_gamma(model, gamma);
  return tilted_integral(model, gamma,
                         [&](double x) { return tilted_ladder_g(model, x, gamma); });
}

double mu_theta(const ModelSpec& model, double gamma) {
  require_gamma(model, gamma);
  return tilted_integral(model, gamma,
                         [&](double x) { return x * tilted_ladder_g(model, x, gamma); });
}

double mu_theta_closed_form(const ModelSpec& model, double gamma) {
  require_gamma(model, gamma);
  const double c = model.premium();
  const double d = model.diffusion();
  return (tilted_jump_mean(model, gamma) - c + 2.0 * d * gamma) / (gamma * (c - d * gamma));
}

ThetaVector laplace_grad_g(const ModelSpec& model, double gamma) {
  require_gamma(model, gamma);
  ThetaVector out = ThetaVector::Zero();
  const int free_dims = model.fixes_diffusion() ? kAlphaDim : kThetaDim;
  for (int i = 0; i < free_dims; ++i) {
    out[i] = tilted_integral(model, gamma,
                             [&](double x) { return tilted_grad_g(model, x, gamma)[i]; });
  }
  return out;
}

ThetaVector laplace_grad_g_closed_form(const ModelSpec& model, double gamma) {
  require_gamma(model, gamma);
  const double c = model.premium();
  const double mu = model.mu();
  const double lambda = model.lambda();
  switch (model.family()) {
    case Family::ClassicalExp: {
      const double p = 1.0 / (1.0 / mu - gamma);
      return ThetaVector(lambda / (c * mu * mu) * p * p, p / c, 0.0);
    }
    case Family::PerturbedExp: {
      require_non_resonant(model);
      const double d = model.diffusion();
      const double p_mu = 1.0 / (1.0 / mu - gamma);
      const double p_d = 1.0 / (c / d - gamma);
      const double gap = c * mu - d;
      const double diff = p_mu - p_d;
      const double l_mu = lambda / (mu * gap) * p_mu * p_mu - lambda * d / (gap * gap) * diff;
      const double l_lambda = mu / gap * diff;
      const double l_d = lambda * mu / (gap * gap) * diff - lambda * mu * c / (d * d * gap) * p_d * p_d;
      return ThetaVector(l_mu, l_lambda, l_d);
    }
    case Family::GammaSub:
      break;
  }
  throw Error(ErrorCode::DomainError, "no closed-form Laplace transform for gamma-sub");
}

double perturbed_mu_theta_display(const ModelSpec& model, double gamma) {
  if (model.family() != Family::PerturbedExp) {
    throw Error(ErrorCode::DomainError, "perturbed-exp only");
  }
  require_gamma(model, gamma);
  require_non_resonant(model);
  const double c = model.premium();
  const double mu = model.mu();
  const double d = model.diffusion();
  const double p_mu = 1.0 / (1.0 / mu - gamma);
  const double p_d = 1.0 / (c / d - gamma);
  return model.lambda() * mu / (c * mu - d) * (p_mu * p_mu - p_d * p_d);
}

CramerSummary cramer_summary(const ModelSpec& model, double gamma, Route route) {
  CramerSummary s;
  s.gamma = gamma;
  s.constant = cramer_constant(model, gamma);
  if (route == Route::ClosedForm) {
    s.mu_theta = mu_theta_closed_form(model, gamma);
    s.laplace_grad_g = laplace_grad_g_closed_form(model, gamma);
  } else {
    s.mu_theta = mu_theta(model, gamma);
    s.laplace_grad_g = laplace_grad_g(model, gamma);
  }
  s.zeta = s.constant / s.mu_theta * s.laplace_grad_g;
  return s;
}

CramerSummary cramer_summary(const ModelSpec& model, Route route) {
  return cramer_summary(model, solve_adjustment(model).gamma, route);
}

ThetaVector zeta(const ModelSpec& model, Route route) { return cramer_summary(model, route).zeta; }

ThetaVector dot_psi_asymptotic(const CramerSummary& summary, double u) {
  return summary.zeta * (u * std::exp(-summary.gamma * u));
}

ThetaMatrix ddot_psi_asymptotic(const CramerSummary& summary, double u) {
  const ThetaVector v = summary.laplace_grad_g / summary.mu_theta;
  return summary.constant * (v * v.transpose()) * (u * u * std::exp(-summary.gamma * u));
}

double sigma_star_prefactor(const CramerSummary& summary, const ThetaMatrix& sigma_star_matrix) {
  const double q = summary.zeta.dot(sigma_star_matrix * summary.zeta);
  if (q < -1e-14) {
    throw Error(ErrorCode::NegativeQuadForm, "zeta' Sigma* zeta = " + std::to_string(q));
  }
  return std::sqrt(std::max(q, 0.0));
}

double sigma_star(const CramerSummary& summary, const ThetaMatrix& sigma_star_matrix, double u) {
  return sigma_star_prefactor(summary, sigma_star_matrix) * u * std::exp(-summary.gamma * u);
}

}  // namespace ruinband
