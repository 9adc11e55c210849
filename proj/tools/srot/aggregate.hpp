#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "srot/metrics.hpp"

namespace srot::cli {

inline constexpr const char* kRunsSchema = "srot.bench.runs/1";
inline constexpr const char* kAggregateSchema = "srot.bench.aggregate/1";

/// One finished run of a sweep as it appears in runs.csv.
struct RunRows {
  std::string method;
  std::string label;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  std::vector<MetricRecord> records;
};

void write_runs_csv(std::ostream& out, const std::vector<RunRows>& runs);
std::vector<RunRows> read_runs_csv(std::istream& in);

/// Median and interquartile range per (method, lambda, epoch) over seeds. A
/// run that stopped early contributes its last record to later epochs.
struct AggregateRow {
  std::string method;
  std::string label;
  double lambda = 0.0;
  long epoch = 0;
  int runs = 0;
  // Per panel: median, first and third quartile.
  std::vector<std::array<double, 3>> panels;
};

/// Panels in column order: objective, gap, marginal_error, sparsity,
/// matrix_error, value_error, wall_seconds.
const std::vector<std::string>& panel_names();

std::vector<AggregateRow> aggregate(const std::vector<RunRows>& runs);
void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows);

/// Line chart per panel, median curve with the IQR as a band, one colour per
/// configuration.
void write_svg(std::ostream& out, const std::vector<AggregateRow>& rows);

}  // namespace srot::cli
