#include <cmath>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "ruinband/cramer.hpp"
#include "ruinband/error.hpp"
#include "ruinband/lundberg.hpp"
#include "ruinband/renewal.hpp"
#include "test_support.hpp"

using namespace ruinband;
using ruinband::testing::Draws;
using ruinband::testing::gk;
using ruinband::testing::rel_err;

TEST(Cramer, ClassicalConstant) {
  const ModelSpec m = ModelSpec::classical_exp(2, 1, 1);
  EXPECT_NEAR(cramer_constant(m, 0.5), 0.5, 1e-15);
  // general formula by hand: M1 = lambda mu/(1-mu gamma)^2 = 4
  EXPECT_NEAR((2.0 - 1.0) / (4.0 - 2.0 + 0.0), cramer_constant(m, 0.5), 1e-15);
}

TEST(Cramer, PerturbedConstantDualPath) {
  const ModelSpec m = ModelSpec::perturbed_exp(2, 1, 1, 0.25);
  const double g = solve_adjustment(m).gamma;
  // c = 2 lambda mu, so c - lambda mu = lambda mu
  const double display = 1.0 / (1.0 / std::pow(1.0 - g, 2) - 2.0 + 2.0 * 0.25 * g);
  EXPECT_LT(rel_err(cramer_constant(m, g), display), 1e-12);
  EXPECT_LT(rel_err(cramer_constant_closed_form(m, g), display), 1e-12);
}

TEST(Cramer, MomentDiverges) {
  const ModelSpec m = ModelSpec::classical_exp(2, 1, 1);
  try {
    cramer_constant(m, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MomentDiverges);
  }
}

TEST(Cramer, PsiCramer) {
  EXPECT_DOUBLE_EQ(psi_cramer(0.5, 0.5, 0.0), 0.5);
  EXPECT_NEAR(psi_cramer(0.5, 0.5, 2.0), 0.18393972058572117, 1e-15);
  double previous = 1.0;
  for (double u = 0.0; u < 100.0; u += 0.5) {
    const double v = psi_cramer(0.5, 0.5, u);
    EXPECT_LT(v, previous);
    previous = v;
  }
}

TEST(Cramer, ClassicalTiltedMean) {
  const ModelSpec m = ModelSpec::classical_exp(2, 1, 1);
  // tilted density 0.5 e^{-0.5 x}
  EXPECT_NEAR(mu_theta(m, 0.5), 2.0, 1e-10);
  EXPECT_NEAR(mu_theta_closed_form(m, 0.5), 2.0, 1e-13);
}

TEST(Cramer, DualPathsAgree) {
  Draws draws(31);
  for (int family = 0; family < 3; ++family) {
    for (int i = 0; i < 50; ++i) {
      const ModelSpec m = draws.any(family);
      const double g = solve_adjustment(m).gamma;
      const double mq = mu_theta(m, g);
      EXPECT_GT(mq, 0.0);
      EXPECT_LT(rel_err(mq, mu_theta_closed_form(m, g)), 1e-8) << to_string(m.family());
      if (m.family() == Family::GammaSub) continue;
      EXPECT_LT(rel_err(cramer_constant(m, g), cramer_constant_closed_form(m, g)), 1e-8);
      const ThetaVector lq = laplace_grad_g(m, g);
      const ThetaVector lc = laplace_grad_g_closed_form(m, g);
      for (int k = 0; k < kThetaDim; ++k) {
        if (lc[k] == 0.0) {
          EXPECT_EQ(lq[k], 0.0);
        } else {
          EXPECT_LT(rel_err(lq[k], lc[k]), 1e-8) << to_string(m.family()) << " k = " << k;
        }
      }
    }
  }
}

TEST(Cramer, PerturbedDisplayedLambdaComponent) {
  const ModelSpec m = ModelSpec::perturbed_exp(2.5, 1.2, 0.9, 0.7);
  const double g = solve_adjustment(m).gamma;
  const double p_mu = 1.0 / (1.0 / 1.2 - g);
  const double p_d = 1.0 / (2.5 / 0.7 - g);
  EXPECT_LT(rel_err(laplace_grad_g(m, g)[1], 1.2 / (2.5 * 1.2 - 0.7) * (p_mu - p_d)), 1e-9);
}

TEST(Cramer, GammaLaplaceAgainstFrullani) {
  // int e^{g x} E1(b x) dx = log(b/(b-g))/g and int e^{g x} e^{-bx} dx = 1/(b-g)
  Draws draws(32);
  for (int i = 0; i < 30; ++i) {
    const ModelSpec m = draws.gamma();
    const double a = m.a(), b = m.b(), c = m.premium();
    const double g = solve_adjustment(m).gamma;
    const ThetaVector l = laplace_grad_g(m, g);
    EXPECT_LT(rel_err(l[0], std::log(b / (b - g)) / (g * c)), 1e-9);
    EXPECT_LT(rel_err(l[1], -a / (b * c * (b - g))), 1e-9);
    EXPECT_EQ(l[2], 0.0);
  }
}

TEST(Cramer, TiltedKernelNormalized) {
  Draws draws(33);
  for (int family = 0; family < 3; ++family) {
    for (int i = 0; i < 50; ++i) {
      const ModelSpec m = draws.any(family);
      EXPECT_NEAR(tilted_kernel_mass(m, solve_adjustment(m).gamma), 1.0, 1e-8);
    }
  }
}

TEST(Cramer, ClassicalZeta) {
  const ModelSpec m = ModelSpec::classical_exp(2, 1, 1);
  const ThetaVector z = zeta(m);
  EXPECT_NEAR(z[0], 0.5, 1e-10);
  EXPECT_NEAR(z[1], 0.25, 1e-10);
  EXPECT_EQ(z[2], 0.0);
  const CramerSummary s = cramer_summary(m);
  EXPECT_LT((s.zeta - s.constant * s.laplace_grad_g / s.mu_theta).norm(), 1e-15);
}

TEST(Cramer, SecondDerivativeAsymptoteIsSymmetricRankOne) {
  const CramerSummary s = cramer_summary(ModelSpec::perturbed_exp(2, 1, 1, 0.3));
  const ThetaMatrix h = ddot_psi_asymptotic(s, 4.0);
  EXPECT_LT((h - h.transpose()).norm(), 1e-15 * h.norm());
  Eigen::SelfAdjointEigenSolver<ThetaMatrix> eig(h);
  const auto ev = eig.eigenvalues();
  EXPECT_LT(std::abs(ev[0]), 1e-12 * ev.cwiseAbs().maxCoeff());
  EXPECT_LT(std::abs(ev[1]), 1e-12 * ev.cwiseAbs().maxCoeff());
  // C [L/mu]^{x2} u^2 e^{-gu} = zeta zeta' u^2 e^{-gu} / C
  const ThetaMatrix want = s.zeta * s.zeta.transpose() / s.constant * 16.0 * std::exp(-4.0 * s.gamma);
  EXPECT_LT((h - want).norm(), 1e-12 * want.norm());
}

TEST(Cramer, SigmaStar) {
  const ModelSpec m = ModelSpec::classical_exp(2, 1, 1);
  const CramerSummary s = cramer_summary(m);
  ThetaMatrix sig = ThetaMatrix::Zero();
  EXPECT_EQ(sigma_star(s, sig, 1.0), 0.0);
  sig(0, 0) = 1.0;
  sig(1, 1) = 1.0;
  const double pre = 0.5 * std::sqrt(1.25);
  EXPECT_NEAR(sigma_star_prefactor(s, sig), pre, 1e-10);
  EXPECT_NEAR(sigma_star(s, sig, 1.0), pre * std::exp(-0.5), 1e-10);
  for (const double u : {1.0, 3.0, 7.0}) {
    EXPECT_NEAR(sigma_star(s, sig, 2 * u) / sigma_star(s, sig, u), 2.0 * std::exp(-0.5 * u), 1e-12);
  }
  try {
    sigma_star(s, -sig, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeQuadForm);
  }
}

TEST(Cramer, GradientAsymptoteApproachesOracle) {
  const ModelSpec m = ModelSpec::classical_exp(2, 1, 1);
  const CramerSummary s = cramer_summary(m);
  const auto dot = solve_dot_psi(m, 40.0, 40.0 / 8192);
  double previous = 1e300;
  for (const double u : {5.0, 10.0, 20.0, 40.0}) {
    const ThetaVector asym = dot_psi_asymptotic(s, u);
    double worst = 0.0;
    for (int k = 0; k < kAlphaDim; ++k) worst = std::max(worst, std::abs(asym[k] / dot[k].at(u) - 1.0));
    EXPECT_LT(worst, previous);
    previous = worst;
  }
  EXPECT_LT(previous, 0.06);
}
