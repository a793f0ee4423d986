#include "ruinband/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "ruinband/error.hpp"
#include "ruinband/special_functions.hpp"

namespace ruinband {
namespace {

void require_family(const ModelSpec& model, Family family) {
  if (model.family() != family) {
    throw Error(ErrorCode::InvalidArgument,
                "expected " + std::string(to_string(family)) + " model, got " +
                    std::string(to_string(model.family())));
  }
}

void require_horizon(double horizon) {
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) {
    throw Error(ErrorCode::InvalidArgument, "T must be finite and >= 0");
  }
}

// Poisson count, then uniform order statistics for the arrival times.
std::vector<double> arrival_times(double rate, double horizon, Engine& engine) {
  if (horizon == 0.0 || rate == 0.0) return {};
  std::poisson_distribution<long long> count_dist(rate * horizon);
  const long long count = count_dist(engine);
  std::uniform_real_distribution<double> unif(0.0, horizon);
  std::vector<double> times(static_cast<std::size_t>(count));
  for (auto& t : times) t = unif(engine);
  std::sort(times.begin(), times.end());
  return times;
}

std::vector<Claim> exponential_claims(const ModelSpec& model, double horizon, Engine& engine) {
  const std::vector<double> times = arrival_times(model.lambda(), horizon, engine);
  std::exponential_distribution<double> size_dist(1.0 / model.mu());
  std::vector<Claim> claims(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) claims[i] = {times[i], size_dist(engine)};
  return claims;
}

std::size_t grid_intervals(double horizon, double step) {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid step h must be > 0");
  const double ratio = horizon / step;
  const auto n = static_cast<std::size_t>(std::llround(ratio));
  if (std::abs(ratio - static_cast<double>(n)) > 1e-6 * std::max(1.0, ratio)) {
    throw Error(ErrorCode::InvalidArgument, "T/h must be an integer");
  }
  return n;
}

// u0 + c t_i + noise_i - S(t_i) with S the cumulative claims.
std::vector<double> surplus_grid(const ObservationSet& obs, double premium,
                                 const std::vector<double>& noise) {
  const std::size_t points = noise.size();
  std::vector<double> grid(points);
  double aggregate = 0.0;
  std::size_t next = 0;
  for (std::size_t i = 0; i < points; ++i) {
    const double t = obs.grid_step * static_cast<double>(i);
    while (next < obs.claims.size() && obs.claims[next].time <= t) aggregate += obs.claims[next++].size;
    grid[i] = obs.initial_capital + premium * t + noise[i] - aggregate;
  }
  return grid;
}

}  // namespace

ObservationSet simulate_classical(const ModelSpec& model, double horizon, std::uint64_t seed,
                                  std::optional<double> grid_step, double initial_capital) {
  require_family(model, Family::ClassicalExp);
  require_horizon(horizon);
  Engine engine = make_engine(seed);
  ObservationSet obs;
  obs.family = Family::ClassicalExp;
  obs.horizon = horizon;
  obs.seed = seed;
  obs.initial_capital = initial_capital;
  obs.claims = exponential_claims(model, horizon, engine);
  if (grid_step && horizon > 0.0) {
    const std::size_t n = grid_intervals(horizon, *grid_step);
    obs.grid_step = horizon / static_cast<double>(n);
    obs.grid = surplus_grid(obs, model.premium(), std::vector<double>(n + 1, 0.0));
  }
  return obs;
}

ObservationSet simulate_perturbed(const ModelSpec& model, double horizon, double grid_step,
                                  std::uint64_t seed, double initial_capital) {
  require_family(model, Family::PerturbedExp);
  require_horizon(horizon);
  Engine engine = make_engine(seed);
  ObservationSet obs;
  obs.family = Family::PerturbedExp;
  obs.horizon = horizon;
  obs.seed = seed;
  obs.initial_capital = initial_capital;
  obs.claims = exponential_claims(model, horizon, engine);
  if (horizon == 0.0) return obs;

  const std::size_t n = grid_intervals(horizon, grid_step);
  obs.grid_step = horizon / static_cast<double>(n);
  std::normal_distribution<double> normal(0.0, std::sqrt(2.0 * model.diffusion() * obs.grid_step));
  std::vector<double> brownian(n + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i) brownian[i] = brownian[i - 1] + normal(engine);
  obs.grid = surplus_grid(obs, model.premium(), brownian);
  return obs;
}

double truncated_gamma_jump_quantile(double b, double threshold, double p) {
  if (!(threshold > 0.0)) throw Error(ErrorCode::EpsilonZero, "threshold must be > 0");
  if (!(p >= 0.0 && p < 1.0)) throw Error(ErrorCode::DomainError, "p outside [0, 1)");
  // Solve log E1(y) = log(1 - p) + log E1(y0) for y = b z. log E1 is convex
  // and decreasing, so Newton from y0 increases monotonically to the root.
  const double y0 = b * threshold;
  const double log_e1 = [](double y) { return -y + std::log(exp_scaled_e1(y)); }(y0);
  const double target = std::log1p(-p) + log_e1;
  double y = y0;
  for (int it = 0; it < 200; ++it) {
    const double scaled = exp_scaled_e1(y);
    const double f = -y + std::log(scaled) - target;
    const double slope = -1.0 / (y * scaled);
    const double next = y - f / slope;
    if (!(next >= y)) break;
    const double delta = next - y;
    y = next;
    if (delta <= 1e-15 * y) break;
  }
  return y / b;
}

ObservationSet simulate_gamma_jumps(const ModelSpec& model, double horizon, double threshold,
                                    std::uint64_t seed) {
  require_family(model, Family::GammaSub);
  require_horizon(horizon);
  if (!(threshold > 0.0)) throw Error(ErrorCode::EpsilonZero, "infinite activity at epsilon = 0");
  Engine engine = make_engine(seed);
  ObservationSet obs;
  obs.family = Family::GammaSub;
  obs.horizon = horizon;
  obs.threshold = threshold;
  obs.seed = seed;
  const double mass = model.a() * exp_integral_e1(model.b() * threshold);
  const std::vector<double> times = arrival_times(mass, horizon, engine);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  obs.claims.resize(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    obs.claims[i] = {times[i], truncated_gamma_jump_quantile(model.b(), threshold, unif(engine))};
  }
  return obs;
}

}  // namespace ruinband
