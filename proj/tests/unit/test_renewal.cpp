#include <cmath>

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

namespace {

double sup_error_classical(double step) {
  const GridFunction psi = solve_psi(ModelSpec::classical_exp(2, 1, 1), 10.0, step);
  double worst = 0.0;
  for (std::size_t i = 0; i < psi.values.size(); ++i) {
    worst = std::max(worst, std::abs(psi.values[i] - 0.5 * std::exp(-0.5 * psi.node(i))));
  }
  return worst;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Renewal, ClassicalClosedForm) {
  EXPECT_LT(sup_error_classical(0.005), 1e-4);
  const GridFunction psi = solve_psi(ModelSpec::classical_exp(2, 1, 1), 10.0, 0.005);
  EXPECT_NEAR(psi.values.front(), 0.5, 1e-12);
  EXPECT_NEAR(psi.u_max(), 10.0, 1e-12);
}

TEST(Renewal, SecondOrderConvergence) {
  const double coarse = sup_error_classical(0.04);
  const double fine = sup_error_classical(0.02);
  EXPECT_GT(coarse / fine, 3.5);
  EXPECT_LT(coarse / fine, 4.5);
}

TEST(Renewal, GridFunctionInterpolation) {
  GridFunction f{0.5, {1.0, 2.0, 4.0}};
  EXPECT_DOUBLE_EQ(f.at(0.25), 1.5);
  EXPECT_DOUBLE_EQ(f.at(1.0), 4.0);
  EXPECT_EQ(code_of([&] { f.at(1.5); }), ErrorCode::DomainError);
}

TEST(Renewal, Preconditions) {
  EXPECT_EQ(code_of([] { solve_psi(ModelSpec::classical_exp(2, 1, 1), 10.0, 0.2); }), ErrorCode::StepTooCoarse);
  EXPECT_EQ(code_of([] { solve_psi(ModelSpec::classical_exp(1, 1, 1), 10.0, 0.01); }), ErrorCode::NpcViolated);
  const ModelSpec m = ModelSpec::classical_exp(2, 1, 1);
  EXPECT_EQ(code_of([&] { finite_diff_dot_psi(m, 1.0, 1e-7); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { finite_diff_dot_psi(m, 1.0, 0.02); }), ErrorCode::InvalidArgument);
  // marginal NPC: the stencil crosses c = lambda mu
  const ModelSpec marginal = ModelSpec::classical_exp(1.0 + 1e-5, 1, 1);
  EXPECT_EQ(code_of([&] { finite_diff_dot_psi(marginal, 1.0, 1e-2, 10.0, 0.05); }), ErrorCode::NpcViolated);
}

TEST(Renewal, ClassicalGradientClosedForm) {
  const ModelSpec m = ModelSpec::classical_exp(2, 1, 1);
  const auto dot = solve_dot_psi(m, 10.0, 0.005);
  for (std::size_t i = 0; i < dot[0].values.size(); ++i) {
    const double u = dot[0].node(i);
    const double e = std::exp(-0.5 * u);
    // psi = (lambda mu/c) e^{-(1/mu - lambda/c) u}
    const double d_mu = 0.5 * (1.0 + u) * e;
    const double d_lambda = (0.5 + 0.5 * u / 2.0) * e;
    EXPECT_LT(rel_err(dot[0].values[i], d_mu), 1e-3) << u;
    EXPECT_LT(rel_err(dot[1].values[i], d_lambda), 1e-3) << u;
    EXPECT_EQ(dot[2].values[i], 0.0);
  }
}

TEST(Renewal, GradientMatchesFiniteDifferences) {
  Draws draws(41);
  for (int family = 0; family < 3; ++family) {
    const ModelSpec m = draws.any(family);
    const auto dot = solve_dot_psi(m, 12.0, 12.0 / 2048);
    for (const double u : {0.5, 3.0, 8.0}) {
      const ThetaVector fd = finite_diff_dot_psi(m, u, 1e-4, 12.0, 12.0 / 2048);
      for (int k = 0; k < kThetaDim; ++k) {
        EXPECT_LT(std::abs(dot[k].at(u) - fd[k]), 1e-3 * std::max(std::abs(fd[k]), 1e-3 * fd.norm()))
            << to_string(m.family()) << " k = " << k << " u = " << u;
      }
    }
  }
}

TEST(Renewal, CentralDifferenceOrder) {
  const ModelSpec m = ModelSpec::classical_exp(2, 1, 1);
  // at u = 3 the third mu-derivative of psi vanishes, which hides the d^2 term
  const double u = 1.0;
  const double want_mu = 0.5 * (1.0 + u) * std::exp(-0.5 * u);
  EXPECT_LT(rel_err(finite_diff_dot_psi(m, u, 1e-4, 10.0, 0.0025)[0], want_mu), 1e-5);
  // D(d) = D* + K d^2 + ..., so successive differences shrink by 4
  const double d1 = finite_diff_dot_psi(m, u, 1e-2, 10.0, 0.0025)[0];
  const double d2 = finite_diff_dot_psi(m, u, 5e-3, 10.0, 0.0025)[0];
  const double d3 = finite_diff_dot_psi(m, u, 2.5e-3, 10.0, 0.0025)[0];
  EXPECT_GT((d1 - d2) / (d2 - d3), 3.5);
  EXPECT_LT((d1 - d2) / (d2 - d3), 4.5);
}

TEST(Renewal, PsiMonotoneAndBounded) {
  Draws draws(42);
  for (int i = 0; i < 30; ++i) {
    const ModelSpec m = draws.any(i);
    const GridFunction psi = solve_psi(m, 15.0, 15.0 / 1024);
    for (std::size_t k = 0; k < psi.values.size(); ++k) {
      EXPECT_GE(psi.values[k], 0.0);
      EXPECT_LE(psi.values[k], 1.0);
      if (k > 0) EXPECT_LE(psi.values[k], psi.values[k - 1] + 1e-12) << to_string(m.family());
    }
  }
}

TEST(Renewal, KernelIsDefective) {
  Draws draws(43);
  for (int i = 0; i < 30; ++i) {
    const ModelSpec m = draws.any(i);
    const double mass = m.family() == Family::GammaSub
                            ? gk([&](double t) { return 2.0 * t * ladder_g(m, t * t); }, 0.0, 1.0) +
                                  gk([&](double x) { return ladder_g(m, x); }, 1.0, 200.0 / m.b())
                            : gk([&](double x) { return ladder_g(m, x); }, 0.0, 80.0 * m.mu());
    EXPECT_LT(mass, 1.0);
    EXPECT_NEAR(mass, levy_mean(m) / m.premium(), 1e-7);
  }
}

TEST(Renewal, TiltedSolutionApproachesCramerConstant) {
  const ModelSpec m = ModelSpec::classical_exp(2, 1, 1);
  const GridFunction psi = solve_psi(m);
  EXPECT_NEAR(psi.at(20.0) * std::exp(0.5 * 20.0) / 0.5, 1.0, 0.02);
  const ModelSpec p = ModelSpec::perturbed_exp(2, 1, 1, 0.3);
  const CramerSummary s = cramer_summary(p);
  EXPECT_NEAR(solve_psi(p).at(20.0) * std::exp(s.gamma * 20.0) / s.constant, 1.0, 0.02);
}
