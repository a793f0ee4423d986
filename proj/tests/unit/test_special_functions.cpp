#include <cmath>

#include <boost/math/special_functions/expint.hpp>
#include <gtest/gtest.h>

#include "ruinband/error.hpp"
#include "ruinband/special_functions.hpp"
#include "test_support.hpp"

using namespace ruinband;
using ruinband::testing::rel_err;

TEST(ExpIntegral, ValueAtOne) { EXPECT_NEAR(exp_integral_e1(1.0), 0.21938393439552, 1e-12); }

TEST(ExpIntegral, MatchesBoostAcrossRegimes) {
  for (double x = 1e-8; x < 700.0; x *= 1.37) {
    const double want = boost::math::expint(1, x);
    EXPECT_LT(rel_err(exp_integral_e1(x), want), 1e-12) << "x = " << x;
    EXPECT_LE(std::abs(exp_integral_e1(x) - want), 1e-12) << "x = " << x;
  }
  for (const double x : {0.999999, 1.0, 1.000001}) {
    EXPECT_LT(rel_err(exp_integral_e1(x), boost::math::expint(1, x)), 1e-13);
  }
}

TEST(ExpIntegral, LargeArgumentLeadingTerm) {
  const double x = 50.0;
  EXPECT_NEAR(exp_integral_e1(x) / (std::exp(-x) / x), 1.0, 0.02);
}

TEST(ExpIntegral, DerivativeIdentity) {
  for (const double x : {0.05, 0.5, 1.0, 2.5, 10.0}) {
    const double h = 1e-5 * x;
    const double fd = (exp_integral_e1(x + h) - exp_integral_e1(x - h)) / (2.0 * h);
    EXPECT_LT(rel_err(fd, -std::exp(-x) / x), 1e-6);
  }
}

TEST(ExpIntegral, ScaledVersionAgreesAndSurvivesLargeArguments) {
  for (const double x : {0.1, 1.0, 5.0, 30.0}) {
    EXPECT_LT(rel_err(exp_scaled_e1(x), std::exp(x) * boost::math::expint(1, x)), 1e-12);
  }
  const double x = 2000.0;
  EXPECT_LT(rel_err(exp_scaled_e1(x), 1.0 / x * (1.0 - 1.0 / x + 2.0 / (x * x))), 1e-9);
}

TEST(ExpIntegral, RejectsNonPositive) {
  EXPECT_THROW(exp_integral_e1(0.0), Error);
  EXPECT_THROW(exp_integral_e1(-1.0), Error);
  try {
    exp_integral_e1(0.0);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainError);
  }
}

TEST(NormalQuantile, ReferenceValues) {
  EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-9);
  EXPECT_NEAR(normal_quantile(0.5), 0.0, 1e-12);
  EXPECT_NEAR(normal_quantile(0.9), 1.2815515655446004, 1e-9);
  EXPECT_NEAR(normal_quantile(0.1), -normal_quantile(0.9), 1e-12);
}
