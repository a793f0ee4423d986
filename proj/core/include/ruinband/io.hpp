#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "ruinband/confidence.hpp"
#include "ruinband/estimate.hpp"
#include "ruinband/lundberg.hpp"
#include "ruinband/simulate.hpp"

namespace ruinband::io {

// Carried as "spec_version" in every JSON document.
inline constexpr std::string_view kFormatVersion = "1.0";

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);

// Claims file columns: index,time,size. Grid file columns: i,t,R.
// Header row, UTF-8, '.' decimal separator, '\n' line endings.
std::string claims_csv(const ObservationSet& obs);
std::string grid_csv(const ObservationSet& obs);
void write_text(const std::filesystem::path& path, std::string_view text);

struct ReadOptions {
  Family family = Family::ClassicalExp;
  std::optional<double> horizon;  // defaults to the last grid time
  double threshold = 0.0;
};

/// Parses the CSV pair. Errors: IoError (missing file), InvalidArgument
/// (bad header or field, reported with file and line).
ObservationSet read_observations(const std::filesystem::path& claims_file,
                                 const std::optional<std::filesystem::path>& grid_file,
                                 const ReadOptions& options);

std::string estimate_json(const EstimateReport& report);
std::string lundberg_json(const ModelSpec& model, const LundbergSolution& solution);
std::string interval_json(const IntervalReport& report);
std::string coverage_json(const CoverageResult& result);
std::string coverage_csv_header();
std::string coverage_csv_row(const CoverageResult& result);

}  // namespace ruinband::io
