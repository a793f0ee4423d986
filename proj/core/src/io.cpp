#include "ruinband/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ruinband/error.hpp"

namespace ruinband::io {
namespace {

using Json = nlohmann::ordered_json;

Json theta_json(const ThetaVector& v) { return Json::array({v[0], v[1], v[2]}); }

Json matrix_json(const auto& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& text, const std::filesystem::path& file, std::size_t line) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::InvalidArgument,
                file.string() + ":" + std::to_string(line) + ": bad number '" + text + "'");
  }
  return value;
}

// Reads rows of a CSV with the expected header; returns numeric columns.
std::vector<std::vector<double>> read_table(const std::filesystem::path& file,
                                            const std::vector<std::string>& header) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + file.string());
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::InvalidArgument, file.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (split_fields(line) != header) {
    throw Error(ErrorCode::InvalidArgument, file.string() + ":1: unexpected header '" + line + "'");
  }
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::InvalidArgument, file.string() + ":" + std::to_string(line_no) +
                                                  ": expected " + std::to_string(header.size()) +
                                                  " fields");
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_number(f, file, line_no));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json interval_body(const IntervalReport& r) {
  Json j;
  j["variant"] = std::string(to_string(r.variant));
  j["u"] = r.u;
  j["level"] = r.level;
  j["z"] = r.z;
  j["center"] = r.center;
  j["half_width"] = r.half_width;
  j["lo"] = r.lo;
  j["hi"] = r.hi;
  j["lo_clipped"] = r.lo_clipped;
  j["hi_clipped"] = r.hi_clipped;
  j["sigma_star_prefactor"] = r.sigma_star_prefactor;
  j["sigma_star"] = r.sigma_star;
  j["horizon_warning"] = r.horizon_warning;
  j["c"] = r.premium;
  j["theta_hat"] = theta_json(r.estimate.theta_hat);
  j["sigma_hat"] = matrix_json(r.estimate.sigma_hat);
  j["T"] = r.estimate.horizon;
  j["gamma_hat"] = r.lundberg.gamma;
  j["lundberg_residual"] = r.lundberg.residual;
  j["cramer_constant"] = r.cramer.constant;
  j["mu_theta"] = r.cramer.mu_theta;
  j["laplace_grad_g"] = theta_json(r.cramer.laplace_grad_g);
  j["zeta"] = theta_json(r.cramer.zeta);
  return j;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string claims_csv(const ObservationSet& obs) {
  std::string out = "index,time,size\n";
  for (std::size_t i = 0; i < obs.claims.size(); ++i) {
    out += std::to_string(i) + ',' + format_double(obs.claims[i].time) + ',' +
           format_double(obs.claims[i].size) + '\n';
  }
  return out;
}

std::string grid_csv(const ObservationSet& obs) {
  std::string out = "i,t,R\n";
  for (std::size_t i = 0; i < obs.grid.size(); ++i) {
    out += std::to_string(i) + ',' + format_double(obs.grid_step * static_cast<double>(i)) + ',' +
           format_double(obs.grid[i]) + '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

ObservationSet read_observations(const std::filesystem::path& claims_file,
                                 const std::optional<std::filesystem::path>& grid_file,
                                 const ReadOptions& options) {
  ObservationSet obs;
  obs.family = options.family;
  obs.threshold = options.threshold;
  for (const auto& row : read_table(claims_file, {"index", "time", "size"})) {
    obs.claims.push_back({row[1], row[2]});
  }
  if (grid_file) {
    const auto rows = read_table(*grid_file, {"i", "t", "R"});
    for (const auto& row : rows) obs.grid.push_back(row[2]);
    if (rows.size() >= 2) {
      obs.grid_step = rows[1][1] - rows[0][1];
      obs.horizon = rows.back()[1];
    }
    if (!rows.empty()) obs.initial_capital = rows.front()[2];
  }
  if (options.horizon) obs.horizon = *options.horizon;
  if (!(obs.horizon > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "horizon T unknown: pass --T or a grid file");
  }
  return obs;
}

std::string estimate_json(const EstimateReport& report) {
  Json j;
  j["spec_version"] = std::string(kFormatVersion);
  j["family"] = std::string(to_string(report.family));
  j["theta_hat"] = theta_json(report.theta_hat);
  j["sigma_hat"] = matrix_json(report.sigma_hat);
  j["sigma_star_hat"] = matrix_json(report.sigma_star_hat);
  j["T"] = report.horizon;
  Json flags;
  flags["claims"] = report.diagnostics.claims;
  flags["iterations"] = report.diagnostics.iterations;
  flags["residual"] = report.diagnostics.residual;
  flags["diffusion_raw"] = report.diagnostics.diffusion_raw;
  flags["diffusion_clamped"] = report.diagnostics.diffusion_clamped;
  j["flags"] = flags;
  return j.dump(2) + '\n';
}

std::string lundberg_json(const ModelSpec& model, const LundbergSolution& s) {
  Json j;
  j["spec_version"] = std::string(kFormatVersion);
  j["family"] = std::string(to_string(model.family()));
  j["c"] = model.premium();
  j["theta"] = theta_json(model.theta());
  j["gamma"] = s.gamma;
  j["residual"] = s.residual;
  j["bracket"] = Json::array({s.bracket_lo, s.bracket_hi});
  j["iterations"] = s.iterations;
  return j.dump(2) + '\n';
}

std::string interval_json(const IntervalReport& report) {
  Json j;
  j["spec_version"] = std::string(kFormatVersion);
  j["family"] = std::string(to_string(report.estimate.family));
  const Json body = interval_body(report);
  for (const auto& [key, value] : body.items()) j[key] = value;
  return j.dump(2) + '\n';
}

std::string coverage_json(const CoverageResult& r) {
  Json j;
  j["spec_version"] = std::string(kFormatVersion);
  j["replicates"] = r.replicates;
  j["hits"] = r.hits;
  j["failures"] = r.failures;
  j["coverage"] = r.coverage;
  j["nominal"] = r.nominal;
  j["true_psi"] = r.true_psi;
  Json cfg;
  cfg["family"] = std::string(to_string(r.config.truth.family()));
  cfg["theta"] = theta_json(r.config.truth.theta());
  cfg["c"] = r.config.truth.premium();
  cfg["T"] = r.config.horizon;
  cfg["u"] = r.config.u;
  cfg["variant"] = std::string(to_string(r.config.variant));
  cfg["h"] = r.config.grid_step;
  cfg["epsilon"] = r.config.threshold;
  cfg["seed"] = r.config.seed;
  j["config"] = cfg;
  return j.dump(2) + '\n';
}

std::string coverage_csv_header() {
  return "family,theta1,theta2,D,c,T,u,h,epsilon,variant,level,seed,replicates,hits,failures,coverage\n";
}

std::string coverage_csv_row(const CoverageResult& r) {
  const auto& c = r.config;
  const ThetaVector t = c.truth.theta();
  std::string row = std::string(to_string(c.truth.family()));
  for (const double v : {t[0], t[1], t[2], c.truth.premium(), c.horizon, c.u, c.grid_step, c.threshold}) {
    row += ',' + format_double(v);
  }
  row += ',' + std::string(to_string(c.variant)) + ',' + format_double(c.level) + ',' +
         std::to_string(c.seed) + ',' + std::to_string(r.replicates) + ',' + std::to_string(r.hits) +
         ',' + std::to_string(r.failures) + ',' + format_double(r.coverage) + '\n';
  return row;
}

}  // namespace ruinband::io
