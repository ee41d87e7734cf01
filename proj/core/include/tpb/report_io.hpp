#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tpb/experiment.hpp"

namespace tpb {

inline constexpr std::string_view kCsvHeader = "policy,checkpoint_t,mean_regret,stderr,bound,n,m,trials,seed";

/// Results table, one row per (policy, checkpoint). Numbers use the shortest
/// round-trip decimal form so the text is a pure function of the report.
std::string format_csv(const ExperimentReport& report);
/// Writes format_csv to `path`. Throws std::runtime_error on I/O failure.
void emit_csv(const ExperimentReport& report, const std::filesystem::path& path);

/// Writes curve_<policy>.csv (t,mean_regret,stderr) for each policy and
/// curve_bound.csv (t,bound) into `dir`, creating it if needed.
void emit_curves(const ExperimentReport& report, const std::filesystem::path& dir);

/// Constants, bound status and provenance as JSON.
std::string format_report_json(const ExperimentReport& report);
void emit_report_json(const ExperimentReport& report, const std::filesystem::path& path);

struct CsvRow {
  std::string policy;
  std::uint64_t checkpoint_t = 0;
  double mean_regret = 0.0;
  double stderr_ = 0.0;
  std::optional<double> bound;
  std::size_t n = 0;
  std::optional<std::size_t> m;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Parses text produced by format_csv. Throws std::runtime_error on a
/// malformed header or row.
std::vector<CsvRow> parse_csv(std::string_view text);

}  // namespace tpb
