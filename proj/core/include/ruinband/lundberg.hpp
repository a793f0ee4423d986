#pragma once

#include "ruinband/models.hpp"

namespace ruinband {

struct LundbergSolution {
  double gamma = 0.0;
  double residual = 0.0;  // kappa(gamma)
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
};

/// Unique positive root of kappa on (0, min(c/D, pole)).
/// Errors: NpcViolated, NoRoot, NoConvergence.
LundbergSolution solve_adjustment(const ModelSpec& model);

/// Asymptotic variance of sqrt(T)(gamma_hat - gamma):
///   grad_alpha kappa' Sigma grad_alpha kappa / kappa'_r(gamma)^2.
/// Errors: DegenerateDenominator when |kappa'_r(gamma)| < 1e-10.
double gamma_hat_variance(const ModelSpec& model, double gamma, const AlphaMatrix& sigma_alpha);

}  // namespace ruinband
