#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "srot/core.hpp"

namespace srot {

inline constexpr double kDefaultZeroThreshold = 1e-12;

/// One row of a solver trace. matrix_error and value_error are NaN when the
/// run had no LP reference plan to compare against.
struct MetricRecord {
  long epoch = 0;
  double wall_seconds = 0.0;
  double objective = 0.0;
  double gap = 0.0;
  double marginal_error = 0.0;
  double sparsity = 0.0;
  double matrix_error = std::numeric_limits<double>::quiet_NaN();
  double value_error = std::numeric_limits<double>::quiet_NaN();
};

struct SolverTrace {
  std::vector<MetricRecord> records;
  /// Options snapshot, seed, instance digest and run notes, as key -> value.
  std::map<std::string, std::string> meta;

  /// Appends a record; throws InternalError unless its epoch is strictly
  /// greater than the last one.
  void append(const MetricRecord& record);
};

/// e_c = ||T 1_n - a|| + ||T^T 1_m - b||, recomputed from the entries.
double marginal_error(const Matrix& plan, const Vector& source, const Vector& target);

/// Fraction of entries with |T_ij| <= threshold.
double sparsity(const Matrix& plan, double threshold = kDefaultZeroThreshold);

/// e_m = ||T - T_LP||_F / ||T_LP||_F.
double matrix_error(const Matrix& plan, const Matrix& lp_plan);

struct ValueError {
  double value = 0.0;
  bool absolute = false;  // true when <T_LP, C> == 0 and the raw difference is reported
};

/// e_v = |<T,C> - <T_LP,C>| / |<T_LP,C>|.
ValueError value_error(const Matrix& plan, const Matrix& lp_plan, const Matrix& cost);

/// Evaluates every metric at the current plan. `lp_plan` may be null.
MetricRecord measure(const Problem& problem, const TransportPlan& plan, long epoch, double wall_seconds,
                     const Matrix* lp_plan, double zero_threshold = kDefaultZeroThreshold);

}  // namespace srot
