#pragma once

#include <cstdint>
#include <string_view>

#include "ruinband/cramer.hpp"
#include "ruinband/estimate.hpp"
#include "ruinband/lundberg.hpp"

namespace ruinband {

// I centers on the plug-in ruin probability (renewal oracle at theta_hat);
// J centers on the plug-in Cramer approximation C e^{-gamma u}.
enum class IntervalVariant { I, J };

std::string_view to_string(IntervalVariant variant) noexcept;
IntervalVariant parse_variant(std::string_view name);

struct IntervalOptions {
  int oracle_cells = 4096;  // variant I: grid cells on [0, u]
  Route route = Route::Quadrature;
};

struct IntervalReport {
  IntervalVariant variant = IntervalVariant::J;
  double premium = 0.0;
  double u = 0.0;
  double level = 0.0;
  double z = 0.0;  // upper (1 - level)/2 normal quantile
  double center = 0.0;
  double half_width = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double lo_clipped = 0.0;  // [lo, hi] intersected with [0, 1]
  double hi_clipped = 0.0;
  double sigma_star_prefactor = 0.0;
  double sigma_star = 0.0;
  bool horizon_warning = false;  // u / sqrt(T) > 0.5
  EstimateReport estimate;
  LundbergSolution lundberg;
  CramerSummary cramer;
};

/// center +- z sigma*(theta_hat, u) / sqrt(T).
/// Errors: InvalidArgument (level, u), NpcViolatedAtEstimate, and anything
/// propagated from the solvers.
IntervalReport build_interval(const EstimateReport& estimate, double premium, double u, double level,
                              IntervalVariant variant, IntervalOptions options = {});

/// Reference psi_theta(u): closed form for ClassicalExp, renewal oracle on
/// [0, u] with `cells` cells otherwise.
double true_ruin_probability(const ModelSpec& model, double u, int cells = 8192);

struct CoverageConfig {
  ModelSpec truth = ModelSpec::classical_exp(2.0, 1.0, 1.0);
  double horizon = 5000.0;
  double u = 5.0;
  double level = 0.95;
  int replicates = 1000;
  std::uint64_t seed = 1;
  IntervalVariant variant = IntervalVariant::I;
  double grid_step = 0.01;  // perturbed family
  double threshold = 0.5;   // gamma family
  unsigned workers = 0;     // 0: hardware concurrency
  IntervalOptions interval;
};

struct CoverageResult {
  int replicates = 0;
  int hits = 0;
  int failures = 0;  // replicates dropped after a numerical or data error
  double coverage = 0.0;
  double nominal = 0.0;
  double true_psi = 0.0;
  CoverageConfig config;
};

/// simulate -> estimate -> build_interval for each replicate, counting how
/// often the raw interval contains the true psi(u). Replicate r draws from
/// stream_seed(seed, r) and results are reduced in replicate order, so the
/// outcome does not depend on the number of workers.
/// Errors: InvalidArgument when replicates < 100.
CoverageResult coverage_experiment(const CoverageConfig& config);

}  // namespace ruinband
