#include "ruinband/confidence.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "ruinband/error.hpp"
#include "ruinband/renewal.hpp"
#include "ruinband/rng.hpp"
#include "ruinband/simulate.hpp"
#include "ruinband/special_functions.hpp"

namespace ruinband {
namespace {

ObservationSet simulate_replicate(const CoverageConfig& config, std::uint64_t seed) {
  const ModelSpec& truth = config.truth;
  switch (truth.family()) {
    case Family::ClassicalExp:
      return simulate_classical(truth, config.horizon, seed);
    case Family::PerturbedExp:
      return simulate_perturbed(truth, config.horizon, config.grid_step, seed);
    case Family::GammaSub:
      return simulate_gamma_jumps(truth, config.horizon, config.threshold, seed);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family");
}

enum class Outcome : unsigned char { Miss, Hit, Failed };

}  // namespace

std::string_view to_string(IntervalVariant variant) noexcept {
  return variant == IntervalVariant::I ? "I" : "J";
}

IntervalVariant parse_variant(std::string_view name) {
  if (name == "I" || name == "i") return IntervalVariant::I;
  if (name == "J" || name == "j") return IntervalVariant::J;
  throw Error(ErrorCode::InvalidArgument, "variant must be I or J");
}

IntervalReport build_interval(const EstimateReport& estimate, double premium, double u, double level,
                              IntervalVariant variant, IntervalOptions options) {
  if (!(level > 0.0 && level < 1.0)) throw Error(ErrorCode::InvalidArgument, "level must lie in (0,1)");
  if (!(u > 0.0)) throw Error(ErrorCode::InvalidArgument, "u must be > 0");
  if (!(estimate.horizon > 0.0)) throw Error(ErrorCode::InvalidArgument, "T must be > 0");

  const ModelSpec model = estimated_model(estimate, premium);
  if (!npc_check(model)) {
    throw Error(ErrorCode::NpcViolatedAtEstimate,
                "c = " + std::to_string(premium) + " <= m(theta_hat) = " + std::to_string(levy_mean(model)));
  }

  IntervalReport r;
  r.variant = variant;
  r.premium = premium;
  r.u = u;
  r.level = level;
  r.estimate = estimate;
  r.lundberg = solve_adjustment(model);
  const Route route = model.family() == Family::GammaSub ? Route::Quadrature : options.route;
  r.cramer = cramer_summary(model, r.lundberg.gamma, route);
  r.z = normal_quantile(0.5 + 0.5 * level);
  r.sigma_star_prefactor = sigma_star_prefactor(r.cramer, estimate.sigma_star_hat);
  r.sigma_star = r.sigma_star_prefactor * u * std::exp(-r.cramer.gamma * u);

  if (variant == IntervalVariant::J) {
    r.center = psi_cramer(r.cramer.constant, r.cramer.gamma, u);
  } else {
    r.center = solve_psi(model, u, u / options.oracle_cells).at(u);
  }
  r.half_width = r.z * r.sigma_star / std::sqrt(estimate.horizon);
  r.lo = r.center - r.half_width;
  r.hi = r.center + r.half_width;
  r.lo_clipped = std::clamp(r.lo, 0.0, 1.0);
  r.hi_clipped = std::clamp(r.hi, 0.0, 1.0);
  r.horizon_warning = u / std::sqrt(estimate.horizon) > 0.5;
  return r;
}

double true_ruin_probability(const ModelSpec& model, double u, int cells) {
  if (model.family() == Family::ClassicalExp) {
    const double gamma = 1.0 / model.mu() - model.lambda() / model.premium();
    return model.lambda() * model.mu() / model.premium() * std::exp(-gamma * u);
  }
  return solve_psi(model, u, u / cells).at(u);
}

CoverageResult coverage_experiment(const CoverageConfig& config) {
  if (config.replicates < 100) {
    throw Error(ErrorCode::InvalidArgument, "coverage needs at least 100 replicates");
  }
  if (!(config.level > 0.0 && config.level < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "level must lie in (0,1)");
  }
  const double truth = true_ruin_probability(config.truth, config.u);
  const auto replicates = static_cast<std::size_t>(config.replicates);
  std::vector<Outcome> outcomes(replicates, Outcome::Failed);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t r = next++; r < replicates; r = next++) {
      try {
        const ObservationSet obs = simulate_replicate(config, stream_seed(config.seed, r));
        const EstimateReport est = estimate(obs);
        const IntervalReport ci = build_interval(est, config.truth.premium(), config.u, config.level,
                                                 config.variant, config.interval);
        outcomes[r] = (ci.lo <= truth && truth <= ci.hi) ? Outcome::Hit : Outcome::Miss;
      } catch (const Error&) {
        outcomes[r] = Outcome::Failed;
      }
    }
  };

  unsigned workers = config.workers == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : config.workers;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, replicates));
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }

  CoverageResult result;
  result.config = config;
  result.replicates = config.replicates;
  result.nominal = config.level;
  result.true_psi = truth;
  for (const Outcome o : outcomes) {
    if (o == Outcome::Hit) ++result.hits;
    if (o == Outcome::Failed) ++result.failures;
  }
  const int valid = result.replicates - result.failures;
  result.coverage = valid > 0 ? static_cast<double>(result.hits) / valid : 0.0;
  return result;
}

}  // namespace ruinband
