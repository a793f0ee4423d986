#include "ruinband/estimate.hpp"

#include <cmath>
#include <string>

#include "ruinband/error.hpp"
#include "ruinband/special_functions.hpp"

namespace ruinband {
namespace {

ThetaMatrix pad_sigma(const AlphaMatrix& sigma) {
  ThetaMatrix out = ThetaMatrix::Zero();
  out.topLeftCorner<kAlphaDim, kAlphaDim>() = sigma;
  return out;
}

void require_horizon(const ObservationSet& obs) {
  if (!(obs.horizon > 0.0)) throw Error(ErrorCode::InsufficientData, "horizon T must be > 0");
}

}  // namespace

EstimateReport mle_exponential(const ObservationSet& obs) {
  require_horizon(obs);
  const std::size_t n = obs.claims.size();
  if (n < 2) {
    throw Error(ErrorCode::InsufficientData, "need at least 2 claims, got " + std::to_string(n));
  }
  double total = 0.0;
  for (const Claim& claim : obs.claims) total += claim.size;
  const double mu = total / static_cast<double>(n);
  const double lambda = static_cast<double>(n) / obs.horizon;

  EstimateReport report;
  report.family = obs.family;
  report.theta_hat = ThetaVector(mu, lambda, 0.0);
  report.sigma_hat << mu * mu / lambda, 0.0, 0.0, lambda;
  report.sigma_star_hat = pad_sigma(report.sigma_hat);
  report.horizon = obs.horizon;
  report.diagnostics.claims = n;
  return report;
}

DiffusionEstimate estimate_diffusion(const ObservationSet& obs) {
  if (obs.grid.size() < 2) throw Error(ErrorCode::MissingGrid, "diffusion estimate needs a surplus grid");
  require_horizon(obs);
  double squared_increments = 0.0;
  for (std::size_t i = 1; i < obs.grid.size(); ++i) {
    const double step = obs.grid[i] - obs.grid[i - 1];
    squared_increments += step * step;
  }
  double squared_claims = 0.0;
  for (const Claim& claim : obs.claims) {
    if (claim.time <= obs.horizon) squared_claims += claim.size * claim.size;
  }
  DiffusionEstimate out;
  out.raw = (squared_increments - squared_claims) / (2.0 * obs.horizon);
  out.clamped = out.raw < 0.0;
  out.value = out.clamped ? 0.0 : out.raw;
  return out;
}

double gamma_rate_equation_lhs(double b, double threshold) {
  const double x = b * threshold;
  return b * exp_scaled_e1(x);
}

AlphaMatrix gamma_asymptotic_covariance(double a, double b, double threshold) {
  const double x = b * threshold;
  const double e = std::exp(-x);
  const double e1 = exp_integral_e1(x);
  const double xi = e / (b * b) * ((1.0 + x) * e1 - e);
  AlphaMatrix sigma;
  sigma(0, 0) = a * e * (1.0 + x) / (b * b * xi);
  sigma(1, 1) = e1 / (a * xi);
  sigma(0, 1) = sigma(1, 0) = e / (b * xi);
  return sigma;
}

EstimateReport mle_gamma(const ObservationSet& obs) {
  require_horizon(obs);
  const double eps = obs.threshold;
  if (!(eps > 0.0)) throw Error(ErrorCode::EpsilonZero, "gamma MLE requires epsilon > 0");
  const std::size_t n = obs.claims.size();
  if (n < 2) {
    throw Error(ErrorCode::InsufficientData, "need at least 2 jumps, got " + std::to_string(n));
  }
  double total = 0.0;
  for (const Claim& claim : obs.claims) total += claim.size;
  const double target = static_cast<double>(n) / total;

  // lhs(b) rises from 0 to 1/eps, and every jump exceeds eps, so the
  // target lies strictly inside that range.
  auto residual = [&](double b) { return gamma_rate_equation_lhs(b, eps) - target; };
  double lo = 1e-8;
  double hi = 1.0;
  double f_lo = residual(lo);
  double f_hi = residual(hi);
  if (f_lo >= 0.0) throw Error(ErrorCode::NoRoot, "rate equation positive at the lower bracket");
  int expansions = 0;
  while (f_hi <= 0.0) {
    lo = hi;
    f_lo = f_hi;
    hi *= 2.0;
    f_hi = residual(hi);
    if (++expansions > 200 || !std::isfinite(f_hi)) {
      throw Error(ErrorCode::NoRoot, "no sign change for the rate equation");
    }
  }

  int iterations = 0;
  double b = 0.5 * (lo + hi);
  double f_b = residual(b);
  int side = 0;
  while (iterations < 200 && hi - lo > 2e-16 * hi && f_b != 0.0) {
    ++iterations;
    b = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
    if (!(b > lo && b < hi)) b = 0.5 * (lo + hi);
    const double width = hi - lo;
    f_b = residual(b);
    if (f_b < 0.0) {
      lo = b;
      f_lo = f_b;
      if (side == -1) f_hi *= 0.5;
      side = -1;
    } else {
      hi = b;
      f_hi = f_b;
      if (side == +1) f_lo *= 0.5;
      side = +1;
    }
    if (hi - lo > 0.5 * width) {
      const double mid = 0.5 * (lo + hi);
      const double f_mid = residual(mid);
      if (f_mid < 0.0) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
        f_hi = f_mid;
      }
      side = 0;
      b = mid;
      f_b = f_mid;
    }
  }

  const double a = b / obs.horizon * std::exp(b * eps) * total;
  EstimateReport report;
  report.family = Family::GammaSub;
  report.theta_hat = ThetaVector(a, b, 0.0);
  report.sigma_hat = gamma_asymptotic_covariance(a, b, eps);
  report.sigma_star_hat = pad_sigma(report.sigma_hat);
  report.horizon = obs.horizon;
  report.diagnostics.claims = n;
  report.diagnostics.iterations = iterations;
  report.diagnostics.residual = f_b;
  return report;
}

EstimateReport estimate(const ObservationSet& obs) {
  switch (obs.family) {
    case Family::ClassicalExp:
      return mle_exponential(obs);
    case Family::PerturbedExp: {
      EstimateReport report = mle_exponential(obs);
      const DiffusionEstimate d = estimate_diffusion(obs);
      report.theta_hat[2] = d.value;
      report.diagnostics.diffusion_raw = d.raw;
      report.diagnostics.diffusion_clamped = d.clamped;
      return report;
    }
    case Family::GammaSub:
      return mle_gamma(obs);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family");
}

ModelSpec estimated_model(const EstimateReport& report, double premium) {
  if (report.family == Family::PerturbedExp && report.theta_hat[2] <= 0.0) {
    // A clamped diffusion estimate degenerates to the classical model.
    return ModelSpec::classical_exp(premium, report.theta_hat[0], report.theta_hat[1]);
  }
  return ModelSpec::from_theta(report.family, premium, report.theta_hat);
}

}  // namespace ruinband
