#include "ruinband/models.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ruinband/error.hpp"
#include "ruinband/special_functions.hpp"

namespace ruinband {
namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be finite and > 0");
  }
}

void require_below_pole(const ModelSpec& model, double r) {
  if (!(r >= 0.0) || r >= mgf_pole(model)) {
    throw Error(ErrorCode::DomainError,
                "r = " + std::to_string(r) + " outside [0, " + std::to_string(mgf_pole(model)) + ")");
  }
}

void require_nonnegative_argument(double x) {
  if (!(x >= 0.0)) throw Error(ErrorCode::DomainError, "argument must be >= 0");
}

// For the perturbed kernel write k = c/D - 1/mu, so that
//   e^{-x/mu} - e^{-cx/D} = e^{-x/mu} (1 - e^{-kx}).
// A = (e^{-x/mu} - e^{-cx/D}) / k and B = dA/dk stay regular as k -> 0.
struct PerturbedParts {
  double a;
  double b;
  double e_mu;
  double e_d;
};

// With a tilt r every term carries e^{rx}; the rates are shifted instead of
// multiplying so that no intermediate overflows.
PerturbedParts perturbed_parts(const ModelSpec& m, double x, double tilt = 0.0) {
  const double c = m.premium();
  const double mu = m.mu();
  const double d = m.diffusion();
  const double k = c / d - 1.0 / mu;
  const double e_mu = std::exp(-x * (1.0 / mu - tilt));
  const double e_d = std::exp(-x * (c / d - tilt));
  const double t = k * x;
  PerturbedParts p{0.0, 0.0, e_mu, e_d};
  if (std::abs(t) >= 0.5) {
    p.a = (e_mu - e_d) / k;
    p.b = (x * e_d - p.a) / k;
    return p;
  }
  // (1 - e^{-t})/t = sum_{m>=1} (-1)^{m-1} t^{m-1}/m!
  // (t e^{-t} + e^{-t} - 1)/t^2 = sum_{m>=2} (-1)^{m-1} (m-1) t^{m-2}/m!
  double phi = 0.0;
  double q = 0.0;
  double inv_factorial = 1.0;
  double t_pow = 1.0;   // t^{m-1}
  double t_prev = 0.0;  // t^{m-2}
  for (int m = 1; m < 30; ++m) {
    inv_factorial /= m;
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;
    phi += sign * t_pow * inv_factorial;
    if (m >= 2) q += sign * (m - 1) * t_prev * inv_factorial;
    t_prev = t_pow;
    t_pow *= t;
  }
  p.a = e_mu * x * phi;
  p.b = e_mu * x * x * q;
  return p;
}

}  // namespace

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::ClassicalExp: return "classical-exp";
    case Family::PerturbedExp: return "perturbed-exp";
    case Family::GammaSub: return "gamma-sub";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  if (name == "classical-exp") return Family::ClassicalExp;
  if (name == "perturbed-exp") return Family::PerturbedExp;
  if (name == "gamma-sub") return Family::GammaSub;
  throw Error(ErrorCode::InvalidArgument, "unknown family '" + std::string(name) + "'");
}

ModelSpec::ModelSpec(Family family, double c, AlphaVector alpha, double d)
    : family_(family), c_(c), alpha_(alpha), d_(d) {
  require_positive(c, "c");
  require_positive(alpha[0], family == Family::GammaSub ? "a" : "mu");
  require_positive(alpha[1], family == Family::GammaSub ? "b" : "lambda");
  if (family == Family::PerturbedExp) {
    require_positive(d, "D");
  } else if (d != 0.0) {
    throw Error(ErrorCode::InvalidArgument, "family fixes D = 0");
  }
}

ModelSpec ModelSpec::classical_exp(double c, double mu, double lambda) {
  return ModelSpec(Family::ClassicalExp, c, AlphaVector(mu, lambda), 0.0);
}

ModelSpec ModelSpec::perturbed_exp(double c, double mu, double lambda, double diffusion) {
  return ModelSpec(Family::PerturbedExp, c, AlphaVector(mu, lambda), diffusion);
}

ModelSpec ModelSpec::gamma_sub(double c, double a, double b) {
  return ModelSpec(Family::GammaSub, c, AlphaVector(a, b), 0.0);
}

ModelSpec ModelSpec::from_theta(Family family, double c, const ThetaVector& theta) {
  const double d = family == Family::PerturbedExp ? theta[2] : 0.0;
  return ModelSpec(family, c, AlphaVector(theta[0], theta[1]), d);
}

ThetaVector ModelSpec::theta() const { return ThetaVector(alpha_[0], alpha_[1], d_); }

ModelSpec ModelSpec::with_premium(double c) const { return ModelSpec(family_, c, alpha_, d_); }

double levy_mean(const ModelSpec& model) {
  if (model.family() == Family::GammaSub) return model.a() / model.b();
  return model.lambda() * model.mu();
}

bool npc_check(const ModelSpec& model) { return model.premium() > levy_mean(model); }

double mgf_pole(const ModelSpec& model) {
  if (model.family() == Family::GammaSub) return model.b();
  return 1.0 / model.mu();
}

double adjustment_upper_bound(const ModelSpec& model) {
  const double pole = mgf_pole(model);
  if (model.fixes_diffusion()) return pole;
  return std::min(pole, model.premium() / model.diffusion());
}

double tail(const ModelSpec& model, double x) {
  require_nonnegative_argument(x);
  if (model.family() == Family::GammaSub) {
    if (x == 0.0) throw Error(ErrorCode::GammaInfiniteActivity, "gamma tail diverges at 0");
    return model.a() * exp_integral_e1(model.b() * x);
  }
  return model.lambda() * std::exp(-x / model.mu());
}

double integrated_tail(const ModelSpec& model, double x) {
  require_nonnegative_argument(x);
  if (model.family() == Family::GammaSub) {
    const double a = model.a();
    const double b = model.b();
    if (x == 0.0) return a / b;
    // antiderivative of E1(bz) is z E1(bz) - e^{-bz}/b
    return a * std::exp(-b * x) * (1.0 / b - x * exp_scaled_e1(b * x));
  }
  return model.lambda() * model.mu() * std::exp(-x / model.mu());
}

double jump_excess_mgf(const ModelSpec& model, double r) {
  require_below_pole(model, r);
  if (model.family() == Family::GammaSub) return -model.a() * std::log1p(-r / model.b());
  const double mu = model.mu();
  return model.lambda() * mu * r / (1.0 - mu * r);
}

double tilted_jump_mean(const ModelSpec& model, double r) {
  require_below_pole(model, r);
  if (model.family() == Family::GammaSub) return model.a() / (model.b() - r);
  const double denom = 1.0 - model.mu() * r;
  return model.lambda() * model.mu() / (denom * denom);
}

double kappa(const ModelSpec& model, double r) {
  if (r == 0.0) return 0.0;
  const double d = model.diffusion();
  return -model.premium() * r + d * r * r + jump_excess_mgf(model, r);
}

double kappa_prime_r(const ModelSpec& model, double r) {
  return -model.premium() + 2.0 * model.diffusion() * r + tilted_jump_mean(model, r);
}

AlphaVector grad_alpha_kappa(const ModelSpec& model, double r) {
  require_below_pole(model, r);
  if (model.family() == Family::GammaSub) {
    const double a = model.a();
    const double b = model.b();
    return AlphaVector(-std::log1p(-r / b), a * (1.0 / b - 1.0 / (b - r)));
  }
  const double mu = model.mu();
  const double lambda = model.lambda();
  const double denom = 1.0 - mu * r;
  return AlphaVector(lambda * r / (denom * denom), mu * r / denom);
}

double tilted_ladder_g(const ModelSpec& model, double u, double r) {
  require_nonnegative_argument(u);
  const double c = model.premium();
  switch (model.family()) {
    case Family::ClassicalExp:
      return model.lambda() / c * std::exp(-u * (1.0 / model.mu() - r));
    case Family::GammaSub: {
      if (u == 0.0) throw Error(ErrorCode::GammaInfiniteActivity, "gamma kernel diverges at 0");
      const double b = model.b();
      return model.a() / c * std::exp((r - b) * u) * exp_scaled_e1(b * u);
    }
    case Family::PerturbedExp:
      return model.lambda() / model.diffusion() * perturbed_parts(model, u, r).a;
  }
  return 0.0;
}

double ladder_g(const ModelSpec& model, double u) { return tilted_ladder_g(model, u, 0.0); }

double ladder_h(const ModelSpec& model, double u) {
  require_nonnegative_argument(u);
  const double c = model.premium();
  switch (model.family()) {
    case Family::ClassicalExp:
    case Family::GammaSub:
      return integrated_tail(model, u) / c;
    case Family::PerturbedExp: {
      // (1/c) k_D * nubar_I = mu g since nubar_I = mu Pi
      const auto p = perturbed_parts(model, u);
      return model.mu() * model.lambda() / model.diffusion() * p.a + p.e_d;
    }
  }
  return 0.0;
}

ThetaVector tilted_grad_g(const ModelSpec& model, double u, double r) {
  require_nonnegative_argument(u);
  const double c = model.premium();
  switch (model.family()) {
    case Family::ClassicalExp: {
      const double mu = model.mu();
      const double e = std::exp(-u * (1.0 / mu - r));
      return ThetaVector(model.lambda() / c * u / (mu * mu) * e, e / c, 0.0);
    }
    case Family::GammaSub: {
      if (u == 0.0) throw Error(ErrorCode::GammaInfiniteActivity, "gamma kernel diverges at 0");
      const double a = model.a();
      const double b = model.b();
      const double e = std::exp((r - b) * u);
      return ThetaVector(e * exp_scaled_e1(b * u) / c, -a * e / (b * c), 0.0);
    }
    case Family::PerturbedExp: {
      const double mu = model.mu();
      const double lambda = model.lambda();
      const double d = model.diffusion();
      const auto p = perturbed_parts(model, u, r);
      const double d_mu = lambda / d * (u * p.a + p.b) / (mu * mu);
      const double d_lambda = p.a / d;
      const double d_d = -lambda / (d * d) * (p.a + c / d * p.b);
      return ThetaVector(d_mu, d_lambda, d_d);
    }
  }
  return ThetaVector::Zero();
}

ThetaVector grad_g(const ModelSpec& model, double u) { return tilted_grad_g(model, u, 0.0); }

ThetaVector grad_h(const ModelSpec& model, double u) {
  require_nonnegative_argument(u);
  const double c = model.premium();
  switch (model.family()) {
    case Family::ClassicalExp: {
      const double mu = model.mu();
      const double e = std::exp(-u / mu);
      return ThetaVector(model.lambda() / c * e * (1.0 + u / mu), mu / c * e, 0.0);
    }
    case Family::GammaSub: {
      const double a = model.a();
      const double b = model.b();
      return ThetaVector(integrated_tail(model, u) / (a * c), -a * std::exp(-b * u) / (b * b * c),
                         0.0);
    }
    case Family::PerturbedExp: {
      const double mu = model.mu();
      const double d = model.diffusion();
      const ThetaVector dg = grad_g(model, u);
      const double g = ladder_g(model, u);
      const double e_d = std::exp(-c * u / d);
      return ThetaVector(g + mu * dg[0], mu * dg[1], mu * dg[2] + c * u / (d * d) * e_d);
    }
  }
  return ThetaVector::Zero();
}

bool kernel_singular_at_zero(const ModelSpec& model) noexcept {
  return model.family() == Family::GammaSub;
}

double kernel_decay_rate(const ModelSpec& model) { return adjustment_upper_bound(model); }

}  // namespace ruinband
