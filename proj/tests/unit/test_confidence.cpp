#include <cmath>

#include <gtest/gtest.h>

#include "ruinband/confidence.hpp"
#include "ruinband/cramer.hpp"
#include "ruinband/error.hpp"
#include "test_support.hpp"

using namespace ruinband;

namespace {

EstimateReport at_truth(const ModelSpec& m, const AlphaMatrix& sigma, double horizon) {
  EstimateReport r;
  r.family = m.family();
  r.theta_hat = m.theta();
  r.sigma_hat = sigma;
  r.sigma_star_hat.topLeftCorner<kAlphaDim, kAlphaDim>() = sigma;
  r.horizon = horizon;
  return r;
}

}  // namespace

TEST(Confidence, VariantNames) {
  EXPECT_EQ(parse_variant("I"), IntervalVariant::I);
  EXPECT_EQ(parse_variant("J"), IntervalVariant::J);
  EXPECT_EQ(to_string(IntervalVariant::J), "J");
  EXPECT_THROW(parse_variant("K"), Error);
}

TEST(Confidence, ClassicalJExample) {
  const ModelSpec m = ModelSpec::classical_exp(2, 1, 1);
  const auto rep = build_interval(at_truth(m, AlphaMatrix::Identity(), 1e4), 2.0, 5.0, 0.95, IntervalVariant::J);
  EXPECT_NEAR(rep.z, 1.959964, 1e-6);
  // by hand: 0.5 e^{-2.5} and z * 0.5 sqrt(1.25) * 5 e^{-2.5} / 100
  const double center = 0.5 * std::exp(-2.5);
  const double half = 1.959963984540054 * 0.5 * std::sqrt(1.25) * 5.0 * std::exp(-2.5) / 100.0;
  EXPECT_NEAR(rep.center, center, 1e-12);
  EXPECT_NEAR(rep.center, 0.041042, 1e-6);
  EXPECT_NEAR(rep.half_width, half, 1e-10);
  EXPECT_NEAR(rep.half_width, 0.004497, 1e-6);
  EXPECT_DOUBLE_EQ(rep.lo, rep.center - rep.half_width);
  EXPECT_DOUBLE_EQ(rep.hi, rep.center + rep.half_width);
  EXPECT_EQ(rep.center, psi_cramer(rep.cramer.constant, rep.cramer.gamma, 5.0));
  EXPECT_FALSE(rep.horizon_warning);
}

TEST(Confidence, CentersAgreeForClassical) {
  const ModelSpec m = ModelSpec::classical_exp(2.3, 0.8, 1.7);
  const auto est = at_truth(m, AlphaMatrix::Identity(), 5000);
  for (const double u : {1.0, 5.0, 12.0}) {
    const auto j = build_interval(est, m.premium(), u, 0.9, IntervalVariant::J);
    const auto i = build_interval(est, m.premium(), u, 0.9, IntervalVariant::I);
    EXPECT_NEAR(i.center, j.center, 1e-4);
    EXPECT_NEAR(i.center, true_ruin_probability(m, u), 1e-6);
    EXPECT_DOUBLE_EQ(i.half_width, j.half_width);
  }
}

TEST(Confidence, DegenerateAndClipped) {
  const ModelSpec m = ModelSpec::classical_exp(2, 1, 1);
  const auto zero = build_interval(at_truth(m, AlphaMatrix::Zero(), 1e4), 2.0, 5.0, 0.95, IntervalVariant::J);
  EXPECT_EQ(zero.half_width, 0.0);
  EXPECT_EQ(zero.lo, zero.hi);
  const auto wide = build_interval(at_truth(m, 1e6 * AlphaMatrix::Identity(), 100), 2.0, 1.0, 0.95,
                                   IntervalVariant::J);
  EXPECT_LT(wide.lo, 0.0);
  EXPECT_EQ(wide.lo_clipped, 0.0);
  EXPECT_EQ(wide.hi_clipped, std::min(1.0, wide.hi));
  EXPECT_TRUE(build_interval(at_truth(m, AlphaMatrix::Identity(), 16), 2.0, 5.0, 0.95, IntervalVariant::J)
                  .horizon_warning);
}

TEST(Confidence, WidthScalesWithRootT) {
  const ModelSpec m = ModelSpec::perturbed_exp(2, 1, 1, 0.3);
  const AlphaMatrix sigma = AlphaMatrix::Identity();
  const auto a = build_interval(at_truth(m, sigma, 2500), 2.0, 4.0, 0.95, IntervalVariant::J);
  const auto b = build_interval(at_truth(m, sigma, 1e4), 2.0, 4.0, 0.95, IntervalVariant::J);
  EXPECT_NEAR(a.half_width * 50.0, b.half_width * 100.0, 1e-14);
}

TEST(Confidence, NpcViolatedAtEstimate) {
  EstimateReport est = at_truth(ModelSpec::classical_exp(2, 1, 1), AlphaMatrix::Identity(), 100);
  est.theta_hat = ThetaVector(2.0, 1.5, 0.0);
  try {
    build_interval(est, 2.0, 5.0, 0.95, IntervalVariant::J);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NpcViolatedAtEstimate);
    EXPECT_FALSE(e.is_validation());
  }
}

TEST(Confidence, BadLevel) {
  const auto est = at_truth(ModelSpec::classical_exp(2, 1, 1), AlphaMatrix::Identity(), 100);
  EXPECT_THROW(build_interval(est, 2.0, 5.0, 1.0, IntervalVariant::J), Error);
  EXPECT_THROW(build_interval(est, 2.0, -1.0, 0.9, IntervalVariant::J), Error);
}

TEST(Confidence, TrueRuinProbability) {
  EXPECT_NEAR(true_ruin_probability(ModelSpec::classical_exp(2, 1, 1), 5.0), 0.5 * std::exp(-2.5), 1e-15);
  const ModelSpec p = ModelSpec::perturbed_exp(2, 1, 1, 0.3);
  const CramerSummary s = cramer_summary(p);
  EXPECT_NEAR(true_ruin_probability(p, 15.0) / psi_cramer(s.constant, s.gamma, 15.0), 1.0, 0.01);
}

TEST(Coverage, RejectsTooFewReplicates) {
  CoverageConfig cfg;
  cfg.replicates = 0;
  EXPECT_THROW(coverage_experiment(cfg), Error);
  cfg.replicates = 99;
  EXPECT_THROW(coverage_experiment(cfg), Error);
}

TEST(Coverage, IndependentOfWorkerCount) {
  CoverageConfig cfg;
  cfg.horizon = 1000;
  cfg.replicates = 100;
  cfg.variant = IntervalVariant::J;
  cfg.workers = 1;
  const auto one = coverage_experiment(cfg);
  cfg.workers = 3;
  const auto three = coverage_experiment(cfg);
  EXPECT_EQ(one.hits, three.hits);
  EXPECT_EQ(one.failures, three.failures);
  EXPECT_LE(one.hits, one.replicates);
  EXPECT_EQ(one.nominal, 0.95);
}

TEST(Coverage, MonotoneInLevel) {
  CoverageConfig cfg;
  cfg.replicates = 400;
  cfg.variant = IntervalVariant::J;
  cfg.seed = 4;
  double previous = 0.0;
  for (const double level : {0.8, 0.9, 0.95}) {
    cfg.level = level;
    const double cov = coverage_experiment(cfg).coverage;
    EXPECT_GE(cov, previous);
    previous = cov;
  }
}

TEST(Coverage, GammaFamilyRuns) {
  CoverageConfig cfg;
  cfg.truth = ModelSpec::gamma_sub(1.0, 1.0, 2.0);
  cfg.horizon = 2000;
  cfg.u = 3.0;
  cfg.replicates = 100;
  cfg.variant = IntervalVariant::J;
  const auto r = coverage_experiment(cfg);
  EXPECT_EQ(r.replicates, 100);
  EXPECT_LE(r.hits + r.failures, r.replicates);
  EXPECT_GT(r.coverage, 0.5);
}

TEST(Coverage, LevelHalfExample) {
  CoverageConfig cfg;
  cfg.level = 0.5;
  cfg.variant = IntervalVariant::I;
  const double cov = coverage_experiment(cfg).coverage;
  EXPECT_GE(cov, 0.44);
  EXPECT_LE(cov, 0.56);
}
