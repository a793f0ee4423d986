#pragma once

#include <string_view>

#include <Eigen/Core>

namespace ruinband {

// Supported Levy surplus families R_t = u + c t + sqrt(2D) W_t - S_t.
enum class Family {
  ClassicalExp,  // compound Poisson, exponential claims, D = 0
  PerturbedExp,  // compound Poisson, exponential claims, D > 0
  GammaSub,      // gamma subordinator, Levy density a z^-1 e^-bz, D = 0
};

std::string_view to_string(Family family) noexcept;
/// Accepts "classical-exp", "perturbed-exp", "gamma-sub".
Family parse_family(std::string_view name);

inline constexpr int kAlphaDim = 2;
inline constexpr int kThetaDim = kAlphaDim + 1;

// (alpha_1, alpha_2, D): (mu, lambda, D) for the exponential-claim
// families and (a, b, D) for the gamma subordinator.
using ThetaVector = Eigen::Matrix<double, kThetaDim, 1>;
using ThetaMatrix = Eigen::Matrix<double, kThetaDim, kThetaDim>;
using AlphaVector = Eigen::Matrix<double, kAlphaDim, 1>;
using AlphaMatrix = Eigen::Matrix<double, kAlphaDim, kAlphaDim>;

class ModelSpec {
 public:
  static ModelSpec classical_exp(double c, double mu, double lambda);
  static ModelSpec perturbed_exp(double c, double mu, double lambda, double diffusion);
  static ModelSpec gamma_sub(double c, double a, double b);
  /// Rebuilds a model from a flattened parameter vector. The D entry is
  /// ignored for families that fix D = 0.
  static ModelSpec from_theta(Family family, double c, const ThetaVector& theta);

  Family family() const noexcept { return family_; }
  double premium() const noexcept { return c_; }
  double diffusion() const noexcept { return d_; }
  bool fixes_diffusion() const noexcept { return family_ != Family::PerturbedExp; }

  // Exponential-claim families.
  double mu() const noexcept { return alpha_[0]; }
  double lambda() const noexcept { return alpha_[1]; }
  // Gamma subordinator.
  double a() const noexcept { return alpha_[0]; }
  double b() const noexcept { return alpha_[1]; }

  AlphaVector alpha() const { return alpha_; }
  ThetaVector theta() const;

  ModelSpec with_premium(double c) const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;

 private:
  ModelSpec(Family family, double c, AlphaVector alpha, double d);

  Family family_;
  double c_;
  AlphaVector alpha_;
  double d_;
};

// ---- Levy measure ---------------------------------------------------------

/// m_alpha = E[S_1].
double levy_mean(const ModelSpec& model);
/// Net profit condition c > m_alpha.
bool npc_check(const ModelSpec& model);
/// Abscissa of divergence of the jump mgf: 1/mu or b.
double mgf_pole(const ModelSpec& model);
/// Upper bound for the adjustment coefficient: min(c/D, pole).
double adjustment_upper_bound(const ModelSpec& model);

/// Pi(x) = nu(x, inf). Throws GammaInfiniteActivity at x = 0 for GammaSub.
double tail(const ModelSpec& model, double x);
/// int_x^inf Pi(z) dz.
double integrated_tail(const ModelSpec& model, double x);

// ---- Lundberg exponent -----------------------------------------------------

/// int (e^{rz} - 1) nu(dz).
double jump_excess_mgf(const ModelSpec& model, double r);
/// int z e^{rz} nu(dz).
double tilted_jump_mean(const ModelSpec& model, double r);
/// kappa(r) = -c r + D r^2 + int (e^{rz} - 1) nu(dz), 0 <= r < pole.
double kappa(const ModelSpec& model, double r);
double kappa_prime_r(const ModelSpec& model, double r);
AlphaVector grad_alpha_kappa(const ModelSpec& model, double r);

// ---- Ladder kernel of the defective renewal equation -----------------------

double ladder_g(const ModelSpec& model, double u);
double ladder_h(const ModelSpec& model, double u);
/// theta-gradients; the D entry is zero for families that fix D = 0.
ThetaVector grad_g(const ModelSpec& model, double u);
ThetaVector grad_h(const ModelSpec& model, double u);

/// e^{ru} g(u) and e^{ru} grad_g(u), evaluated without overflow for r below
/// the kernel decay rate.
double tilted_ladder_g(const ModelSpec& model, double u, double r);
ThetaVector tilted_grad_g(const ModelSpec& model, double u, double r);

/// g (and its alpha-gradient) has an integrable singularity at 0.
bool kernel_singular_at_zero(const ModelSpec& model) noexcept;
/// Slowest exponential decay rate of g, min(c/D, pole).
double kernel_decay_rate(const ModelSpec& model);

}  // namespace ruinband
