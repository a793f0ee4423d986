#pragma once

#include <cstddef>

#include "ruinband/models.hpp"
#include "ruinband/simulate.hpp"

namespace ruinband {

struct EstimateDiagnostics {
  std::size_t claims = 0;
  int iterations = 0;
  double residual = 0.0;          // rate-equation residual (gamma family)
  double diffusion_raw = 0.0;     // D estimate before clamping
  bool diffusion_clamped = false;
};

struct EstimateReport {
  Family family = Family::ClassicalExp;
  ThetaVector theta_hat = ThetaVector::Zero();
  AlphaMatrix sigma_hat = AlphaMatrix::Zero();       // asymptotic cov of sqrt(T)(alpha_hat - alpha)
  ThetaMatrix sigma_star_hat = ThetaMatrix::Zero();  // sigma_hat padded with a zero D row/column
  double horizon = 0.0;
  EstimateDiagnostics diagnostics;
};

/// mu_hat = mean claim size, lambda_hat = N/T. The plug-in covariance is the
/// inverse Fisher information per unit time, diag(mu^2/lambda, lambda).
/// Errors: InsufficientData when fewer than two claims were observed.
EstimateReport mle_exponential(const ObservationSet& obs);

struct DiffusionEstimate {
  double value = 0.0;
  double raw = 0.0;
  bool clamped = false;
};

/// D_hat = (sum |R_ih - R_(i-1)h|^2 - sum U_k^2) / (2T), clamped at 0.
/// Errors: MissingGrid when fewer than two grid points are present.
DiffusionEstimate estimate_diffusion(const ObservationSet& obs);

/// b e^{b eps} E1(b eps); the MLE of b equates this to N / sum U.
double gamma_rate_equation_lhs(double b, double threshold);

/// Inverse Fisher information per unit time of the thresholded-jump
/// likelihood at (a, b, eps).
AlphaMatrix gamma_asymptotic_covariance(double a, double b, double threshold);

/// Thresholded-jump MLE for the gamma subordinator.
/// Errors: InsufficientData (N < 2), NoRoot, EpsilonZero.
EstimateReport mle_gamma(const ObservationSet& obs);

/// Dispatches on obs.family: exponential MLE, plus the diffusion estimate
/// for the perturbed family, or the gamma MLE.
EstimateReport estimate(const ObservationSet& obs);

/// Model with the estimated parameters and the known premium rate.
ModelSpec estimated_model(const EstimateReport& report, double premium);

}  // namespace ruinband
