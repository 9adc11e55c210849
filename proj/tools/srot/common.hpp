#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "srot/baselines.hpp"
#include "srot/metrics.hpp"
#include "srot/solvers.hpp"

namespace srot::cli {

inline constexpr const char* kTraceSchema = "srot.trace/1";
inline constexpr const char* kTraceHeader =
    "epoch,wall_seconds,objective,gap,marginal_error,sparsity,matrix_error,value_error";

struct SolverFlags {
  std::string algo = "bcfw";
  std::string sampling = "uniform";
  std::string step = "els";
  std::string variant = "plain";
  double eps = 1e-6;
  long max_epochs = 1000;
  long gap_period = 1;
  long refresh_m = 1;
  std::uint64_t seed = 0;
};

void add_solver_flags(CLI::App& app, SolverFlags& flags);

/// Throws ConfigError on unknown names or invalid combinations.
SolverOptions to_options(const SolverFlags& flags);

/// A run configuration named on the bench command line: one of the
/// Frank-Wolfe family ("fw-dec", "bcfw-u-els", "bcpfw-els", ...) or a
/// gradient baseline ("pgd", "fista").
struct MethodSpec {
  std::string name;
  std::optional<SolverOptions> solver;
  bool accelerated = false;  // FISTA when solver is empty
};

MethodSpec parse_method(const std::string& name);

std::vector<double> parse_double_list(const std::string& text);
std::vector<long> parse_long_list(const std::string& text);

/// "lo..hi" or a single integer.
std::pair<long, long> parse_range(const std::string& text);

void ensure_directory(const std::filesystem::path& dir);

void write_trace_csv(const std::filesystem::path& path, const SolverTrace& trace);
void write_plan(const std::filesystem::path& path, const Matrix& plan);
void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& value);

/// JSON number, or the strings "nan" / "inf" for non-finite values.
nlohmann::ordered_json json_number(double value);

nlohmann::ordered_json trace_summary(const Problem& problem, const Solution& solution, const SolverOptions& options);

}  // namespace srot::cli
