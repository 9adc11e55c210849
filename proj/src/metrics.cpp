#include "srot/metrics.hpp"

#include <cmath>

#include "srot/error.hpp"

namespace srot {

void SolverTrace::append(const MetricRecord& record) {
  if (!records.empty() && record.epoch <= records.back().epoch) {
    throw InternalError("SolverTrace: epochs must be strictly increasing");
  }
  records.push_back(record);
}

double marginal_error(const Matrix& plan, const Vector& source, const Vector& target) {
  if (plan.rows() != source.size() || plan.cols() != target.size()) {
    throw ConfigError("marginal_error: dimension mismatch");
  }
  const Vector rows = plan.rowwise().sum();
  const Vector cols = plan.colwise().sum().transpose();
  return (rows - source).norm() + (cols - target).norm();
}

double sparsity(const Matrix& plan, double threshold) {
  if (threshold < 0.0) throw ConfigError("sparsity: threshold must be nonnegative");
  if (plan.size() == 0) return 0.0;
  const auto zeros = (plan.array().abs() <= threshold).count();
  return static_cast<double>(zeros) / static_cast<double>(plan.size());
}

double matrix_error(const Matrix& plan, const Matrix& lp_plan) {
  if (plan.rows() != lp_plan.rows() || plan.cols() != lp_plan.cols()) {
    throw ConfigError("matrix_error: dimension mismatch");
  }
  return (plan - lp_plan).norm() / lp_plan.norm();
}

ValueError value_error(const Matrix& plan, const Matrix& lp_plan, const Matrix& cost) {
  if (plan.rows() != lp_plan.rows() || plan.cols() != lp_plan.cols() || cost.rows() != plan.rows() ||
      cost.cols() != plan.cols()) {
    throw ConfigError("value_error: dimension mismatch");
  }
  const double lp_value = lp_plan.cwiseProduct(cost).sum();
  const double diff = std::abs(plan.cwiseProduct(cost).sum() - lp_value);
  if (lp_value == 0.0) return {diff, true};
  return {diff / std::abs(lp_value), false};
}

MetricRecord measure(const Problem& problem, const TransportPlan& plan, long epoch, double wall_seconds,
                     const Matrix* lp_plan, double zero_threshold) {
  MetricRecord r;
  r.epoch = epoch;
  r.wall_seconds = wall_seconds;
  r.objective = objective(problem, plan);
  r.gap = duality_gap(problem, plan).total;
  r.marginal_error = marginal_error(plan.values(), problem.source(), problem.target());
  r.sparsity = sparsity(plan.values(), zero_threshold);
  if (lp_plan != nullptr) {
    r.matrix_error = matrix_error(plan.values(), *lp_plan);
    r.value_error = value_error(plan.values(), *lp_plan, problem.cost()).value;
  }
  return r;
}

}  // namespace srot
