#include "ruinband/lundberg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ruinband/error.hpp"

namespace ruinband {
namespace {

constexpr int kMaxIterations = 200;
constexpr double kClearance = 1e-9;

bool residual_ok(const ModelSpec& model, double gamma, double residual) {
  return std::abs(residual) <= 1e-12 * std::max(1.0, model.premium() * gamma);
}

}  // namespace

LundbergSolution solve_adjustment(const ModelSpec& model) {
  if (!npc_check(model)) {
    throw Error(ErrorCode::NpcViolated, "c = " + std::to_string(model.premium()) +
                                            " does not exceed m = " + std::to_string(levy_mean(model)));
  }
  const double upper = adjustment_upper_bound(model) * (1.0 - kClearance);

  // kappa'(0) = m - c < 0, so kappa is negative just right of 0.
  double lo = 1e-12;
  double f_lo = kappa(model, lo);
  double hi = 0.5 * upper;
  double f_hi = kappa(model, hi);
  while (f_hi <= 0.0) {
    lo = hi;
    f_lo = f_hi;
    if (upper - hi <= 1e-15 * upper) {
      throw Error(ErrorCode::NoRoot, "kappa stays non-positive up to " + std::to_string(upper));
    }
    hi = 0.5 * (hi + upper);
    f_hi = kappa(model, hi);
  }

  LundbergSolution out;
  out.bracket_lo = lo;
  out.bracket_hi = hi;

  // Illinois false position with a bisection fallback when the secant step
  // fails to halve the bracket.
  int side = 0;
  double width = hi - lo;
  double x = lo;
  double fx = f_lo;
  for (int it = 1; it <= kMaxIterations; ++it) {
    out.iterations = it;
    x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    fx = kappa(model, x);
    if (fx == 0.0) break;
    if (fx < 0.0) {
      lo = x;
      f_lo = fx;
      if (side == -1) f_hi *= 0.5;
      side = -1;
    } else {
      hi = x;
      f_hi = fx;
      if (side == +1) f_lo *= 0.5;
      side = +1;
    }
    const double new_width = hi - lo;
    if (new_width > 0.5 * width) {
      const double mid = 0.5 * (lo + hi);
      const double f_mid = kappa(model, mid);
      if (f_mid < 0.0) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
        f_hi = f_mid;
      }
      side = 0;
    }
    width = hi - lo;
    if (width <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      if (std::abs(f_lo) < std::abs(fx)) {
        x = lo;
        fx = f_lo;
      }
      if (std::abs(f_hi) < std::abs(fx)) {
        x = hi;
        fx = f_hi;
      }
      break;
    }
  }

  out.gamma = x;
  out.residual = fx;
  if (!residual_ok(model, x, fx)) {
    throw Error(ErrorCode::NoConvergence,
                "Lundberg residual " + std::to_string(fx) + " at gamma = " + std::to_string(x));
  }
  return out;
}

double gamma_hat_variance(const ModelSpec& model, double gamma, const AlphaMatrix& sigma_alpha) {
  const double slope = kappa_prime_r(model, gamma);
  if (std::abs(slope) < 1e-10) {
    throw Error(ErrorCode::DegenerateDenominator, "kappa'(gamma) vanishes");
  }
  const AlphaVector grad = grad_alpha_kappa(model, gamma);
  return grad.dot(sigma_alpha * grad) / (slope * slope);
}

}  // namespace ruinband
