#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ruinband/confidence.hpp"
#include "ruinband/cramer.hpp"
#include "ruinband/error.hpp"
#include "ruinband/estimate.hpp"
#include "ruinband/io.hpp"
#include "ruinband/lundberg.hpp"
#include "ruinband/renewal.hpp"
#include "ruinband/simulate.hpp"

namespace {

using namespace ruinband;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct ModelFlags {
  std::string family;
  std::optional<double> c, mu, lambda, d, a, b;
};

struct Settings {
  ModelFlags model;
  std::string config;
  std::optional<std::uint64_t> seed;
  unsigned workers = 0;
  double horizon = 0.0;
  double h = 0.01;
  double epsilon = 0.5;
  double u0 = 0.0;
  double u = 5.0;
  double u_max = kDefaultOracleUMax;
  std::optional<double> step;
  double out_step = 0.1;
  double level = 0.95;
  int replicates = 1000;
  int cells = kDefaultOracleCells;
  std::string variant = "J";
  std::string claims;
  std::string grid;
  std::string out;
  bool csv = false;
};

double require(const std::optional<double>& v, const char* flag) {
  if (!v) throw Error(ErrorCode::InvalidArgument, std::string("missing required --") + flag);
  return *v;
}

ModelSpec build_model(const ModelFlags& f) {
  if (f.family.empty()) throw Error(ErrorCode::InvalidArgument, "missing required --family");
  const Family family = parse_family(f.family);
  const double c = require(f.c, "c");
  switch (family) {
    case Family::ClassicalExp:
      return ModelSpec::classical_exp(c, require(f.mu, "mu"), require(f.lambda, "lambda"));
    case Family::PerturbedExp:
      return ModelSpec::perturbed_exp(c, require(f.mu, "mu"), require(f.lambda, "lambda"),
                                      require(f.d, "D"));
    case Family::GammaSub:
      return ModelSpec::gamma_sub(c, require(f.a, "a"), require(f.b, "b"));
  }
  throw Error(ErrorCode::InvalidArgument, "unsupported family");
}

void add_model_flags(CLI::App* cmd, ModelFlags& f, bool need_premium = true) {
  cmd->add_option("--family", f.family, "model family: classical-exp | perturbed-exp | gamma-sub")
      ->check(CLI::IsMember({"classical-exp", "perturbed-exp", "gamma-sub"}));
  if (need_premium) {
    cmd->add_option("--c", f.c, "premium rate (currency/time)")->check(CLI::PositiveNumber);
  }
  cmd->add_option("--mu", f.mu, "mean claim size (currency)")->check(CLI::PositiveNumber);
  cmd->add_option("--lambda", f.lambda, "claim intensity (claims/time)")->check(CLI::PositiveNumber);
  cmd->add_option("--D", f.d, "diffusion coefficient sigma^2/2 (currency^2/time)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--a", f.a, "gamma Levy density scale a (1/time)")->check(CLI::PositiveNumber);
  cmd->add_option("--b", f.b, "gamma Levy density rate b (1/currency)")->check(CLI::PositiveNumber);
}

void add_common(CLI::App* cmd, Settings& s) {
  cmd->add_option("--config", s.config, "flat key = value file; command-line flags take precedence");
  cmd->add_option("--out", s.out, "output path (stdout when omitted; a directory for simulate)");
}

// Keys are long flag names without the leading dashes. '#' starts a comment.
void apply_config(CLI::App* cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path);
  std::string line;
  int line_no = 0;
  const auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return std::string();
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = path + ":" + std::to_string(line_no) + ": ";
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, where + "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    CLI::Option* opt = nullptr;
    try {
      opt = cmd->get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
    }
    if (opt == nullptr || key == "config" || key == "help") {
      throw Error(ErrorCode::InvalidArgument, where + "unknown key '" + key + "'");
    }
    if (opt->count() > 0) continue;
    try {
      if (opt->get_type_size() == 0) {
        if (value == "true" || value == "1") opt->add_result(std::string("true"));
        else if (value != "false" && value != "0")
          throw Error(ErrorCode::InvalidArgument, where + key + ": expected true or false");
      } else {
        opt->add_result(value);
      }
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw Error(ErrorCode::InvalidArgument, where + key + ": " + e.what());
    }
  }
}

void emit(const Settings& s, const std::string& text) {
  if (s.out.empty()) {
    std::cout << text;
  } else {
    io::write_text(s.out, text);
  }
}

std::uint64_t resolve_seed(const Settings& s) {
  if (s.seed) return *s.seed;
  if (const char* env = std::getenv("RUINBAND_SEED")) {
    std::uint64_t v = 0;
    std::istringstream in(env);
    if (!(in >> v) || !in.eof()) throw Error(ErrorCode::InvalidArgument, "RUINBAND_SEED is not an unsigned integer");
    return v;
  }
  return 1;
}

ObservationSet load_observations(const Settings& s) {
  if (s.claims.empty()) throw Error(ErrorCode::InvalidArgument, "missing required --claims");
  io::ReadOptions options;
  if (s.model.family.empty()) throw Error(ErrorCode::InvalidArgument, "missing required --family");
  options.family = parse_family(s.model.family);
  if (s.horizon > 0.0) options.horizon = s.horizon;
  options.threshold = options.family == Family::GammaSub ? s.epsilon : 0.0;
  std::optional<std::filesystem::path> grid;
  if (!s.grid.empty()) grid = s.grid;
  return io::read_observations(s.claims, grid, options);
}

void cmd_simulate(const Settings& s) {
  const ModelSpec model = build_model(s.model);
  if (!(s.horizon > 0.0)) throw Error(ErrorCode::InvalidArgument, "--T must be > 0");
  const std::uint64_t seed = resolve_seed(s);
  ObservationSet obs;
  switch (model.family()) {
    case Family::ClassicalExp: obs = simulate_classical(model, s.horizon, seed, s.h, s.u0); break;
    case Family::PerturbedExp: obs = simulate_perturbed(model, s.horizon, s.h, seed, s.u0); break;
    case Family::GammaSub: obs = simulate_gamma_jumps(model, s.horizon, s.epsilon, seed); break;
  }
  const std::filesystem::path dir = s.out.empty() ? std::filesystem::path(".") : std::filesystem::path(s.out);
  io::write_text(dir / "claims.csv", io::claims_csv(obs));
  if (obs.has_grid()) io::write_text(dir / "grid.csv", io::grid_csv(obs));
  std::cout << "claims " << obs.claims.size() << " grid " << obs.grid.size() << " -> " << dir.string()
            << '\n';
}

void cmd_estimate(const Settings& s) { emit(s, io::estimate_json(estimate(load_observations(s)))); }

void cmd_lundberg(const Settings& s) {
  const ModelSpec model = build_model(s.model);
  emit(s, io::lundberg_json(model, solve_adjustment(model)));
}

void cmd_approx(const Settings& s) {
  const ModelSpec model = build_model(s.model);
  const double step = s.step.value_or(s.u_max / kDefaultOracleCells);
  const CramerSummary summary = cramer_summary(model);
  const GridFunction psi = solve_psi(model, s.u_max, step);
  const auto dot = solve_dot_psi(model, s.u_max, step);
  std::string out =
      "u,psi_cramer,psi_oracle,dot_psi_asym_1,dot_psi_asym_2,dot_psi_asym_3,"
      "dot_psi_oracle_1,dot_psi_oracle_2,dot_psi_oracle_3\n";
  const auto rows = static_cast<long>(std::floor(s.u_max / s.out_step + 1e-9));
  for (long i = 0; i <= rows; ++i) {
    const double u = std::min(s.u_max, s.out_step * static_cast<double>(i));
    const ThetaVector asym = dot_psi_asymptotic(summary, u);
    out += io::format_double(u) + ',' + io::format_double(psi_cramer(summary.constant, summary.gamma, u)) +
           ',' + io::format_double(psi.at(u));
    for (int k = 0; k < kThetaDim; ++k) out += ',' + io::format_double(asym[k]);
    for (int k = 0; k < kThetaDim; ++k) out += ',' + io::format_double(dot[k].at(u));
    out += '\n';
  }
  emit(s, out);
}

void cmd_ci(const Settings& s) {
  const EstimateReport est = estimate(load_observations(s));
  IntervalOptions options;
  options.oracle_cells = s.cells;
  const IntervalReport report = build_interval(est, require(s.model.c, "c"), s.u, s.level,
                                               parse_variant(s.variant), options);
  if (report.horizon_warning) std::cerr << "warning: u/sqrt(T) > 0.5\n";
  emit(s, io::interval_json(report));
}

void cmd_coverage(const Settings& s) {
  CoverageConfig cfg;
  cfg.truth = build_model(s.model);
  if (!(s.horizon > 0.0)) throw Error(ErrorCode::InvalidArgument, "--T must be > 0");
  cfg.horizon = s.horizon;
  cfg.u = s.u;
  cfg.level = s.level;
  cfg.replicates = s.replicates;
  cfg.seed = resolve_seed(s);
  cfg.variant = parse_variant(s.variant);
  cfg.grid_step = s.h;
  cfg.threshold = s.epsilon;
  cfg.workers = s.workers;
  cfg.interval.oracle_cells = s.cells;
  const CoverageResult result = coverage_experiment(cfg);
  emit(s, s.csv ? io::coverage_csv_header() + io::coverage_csv_row(result) : io::coverage_json(result));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ruinband: parametric inference for ruin probabilities of Levy surplus processes"};
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);
  Settings s;

  auto* sim = app.add_subcommand("simulate", "simulate claims (and a surplus grid) into CSV files");
  add_model_flags(sim, s.model);
  add_common(sim, s);
  sim->add_option("--T", s.horizon, "observation horizon (time)")->check(CLI::PositiveNumber);
  sim->add_option("--h", s.h, "grid step (time); default 0.01 keeps n h^2 small")->check(CLI::PositiveNumber);
  sim->add_option("--epsilon", s.epsilon, "gamma jump threshold (currency)")->check(CLI::PositiveNumber);
  sim->add_option("--u0", s.u0, "initial capital on the grid (currency)")->check(CLI::NonNegativeNumber);
  sim->add_option("--seed", s.seed, "64-bit seed (fallback: RUINBAND_SEED, then 1)");

  auto* est = app.add_subcommand("estimate", "estimate parameters from CSV data; prints JSON");
  add_model_flags(est, s.model, false);
  add_common(est, s);
  est->add_option("--claims", s.claims, "claims CSV (index,time,size)");
  est->add_option("--grid", s.grid, "grid CSV (i,t,R); required for perturbed-exp");
  est->add_option("--T", s.horizon, "horizon (time); defaults to the last grid time")->check(CLI::PositiveNumber);
  est->add_option("--epsilon", s.epsilon, "gamma jump threshold (currency)")->check(CLI::PositiveNumber);

  auto* lund = app.add_subcommand("lundberg", "solve for the adjustment coefficient; prints JSON");
  add_model_flags(lund, s.model);
  add_common(lund, s);

  auto* approx = app.add_subcommand("approx", "Cramer approximation vs renewal oracle on a u-grid; prints CSV");
  add_model_flags(approx, s.model);
  add_common(approx, s);
  approx->add_option("--u-max", s.u_max, "largest initial capital (currency)")->check(CLI::PositiveNumber);
  approx->add_option("--step", s.step, "oracle step (currency); default u-max/4096")->check(CLI::PositiveNumber);
  approx->add_option("--out-step", s.out_step, "spacing of output rows (currency)")->check(CLI::PositiveNumber);

  auto* ci = app.add_subcommand("ci", "asymptotic confidence interval for psi(u) from CSV data; prints JSON");
  add_model_flags(ci, s.model);
  add_common(ci, s);
  ci->add_option("--claims", s.claims, "claims CSV (index,time,size)");
  ci->add_option("--grid", s.grid, "grid CSV (i,t,R)");
  ci->add_option("--T", s.horizon, "horizon (time)")->check(CLI::PositiveNumber);
  ci->add_option("--epsilon", s.epsilon, "gamma jump threshold (currency)")->check(CLI::PositiveNumber);
  ci->add_option("--u", s.u, "initial capital (currency)")->check(CLI::PositiveNumber);
  ci->add_option("--level", s.level, "confidence level in (0,1)")->check(CLI::Range(0.0, 1.0));
  ci->add_option("--variant", s.variant, "I (oracle center) or J (Cramer center)")->check(CLI::IsMember({"I", "J"}));
  ci->add_option("--cells", s.cells, "oracle cells on [0,u] for variant I")->check(CLI::PositiveNumber);

  auto* cov = app.add_subcommand("coverage", "Monte Carlo coverage of the interval; prints JSON or CSV");
  add_model_flags(cov, s.model);
  add_common(cov, s);
  cov->add_option("--T", s.horizon, "horizon per replicate (time)")->check(CLI::PositiveNumber);
  cov->add_option("--u", s.u, "initial capital (currency)")->check(CLI::PositiveNumber);
  cov->add_option("--level", s.level, "confidence level in (0,1)")->check(CLI::Range(0.0, 1.0));
  cov->add_option("--replicates", s.replicates, "number of replicates (>= 100)")->check(CLI::PositiveNumber);
  cov->add_option("--variant", s.variant, "I (oracle center) or J (Cramer center)")->check(CLI::IsMember({"I", "J"}));
  cov->add_option("--h", s.h, "grid step for perturbed-exp (time)")->check(CLI::PositiveNumber);
  cov->add_option("--epsilon", s.epsilon, "gamma jump threshold (currency)")->check(CLI::PositiveNumber);
  cov->add_option("--cells", s.cells, "oracle cells on [0,u] for variant I")->check(CLI::PositiveNumber);
  cov->add_option("--seed", s.seed, "master seed (fallback: RUINBAND_SEED, then 1)");
  cov->add_option("--workers", s.workers, "worker threads (0: available parallelism)");
  cov->add_flag("--csv", s.csv, "emit a one-line CSV row instead of JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  CLI::App* cmd = app.get_subcommands().front();
  try {
    if (!s.config.empty()) apply_config(cmd, s.config);
    const std::string name = cmd->get_name();
    if (name == "simulate") cmd_simulate(s);
    else if (name == "estimate") cmd_estimate(s);
    else if (name == "lundberg") cmd_lundberg(s);
    else if (name == "approx") cmd_approx(s);
    else if (name == "ci") cmd_ci(s);
    else if (name == "coverage") cmd_coverage(s);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.is_validation() ? kExitValidation : kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
