#include "srot/core.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "srot/error.hpp"

namespace srot {

namespace {

void validate_histogram(const Vector& h, const char* name) {
  if (h.size() == 0) throw ConfigError(std::string(name) + ": empty histogram");
  for (Index k = 0; k < h.size(); ++k) {
    if (!std::isfinite(h[k]) || h[k] < 0.0) {
      throw ConfigError(std::string(name) + ": entries must be finite and nonnegative");
    }
  }
  const double sum = h.sum();
  if (std::abs(sum - 1.0) > kHistogramTolerance) {
    throw ConfigError(std::string(name) + ": histogram must sum to 1 (got " +
                      std::to_string(sum) + ")");
  }
}

void fnv_mix(std::uint64_t& h, const void* data, std::size_t len) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t k = 0; k < len; ++k) {
    h ^= bytes[k];
    h *= 0x100000001b3ULL;
  }
}

}  // namespace

Problem::Problem(Matrix cost, Vector source, Vector target, double lambda)
    : cost_(std::move(cost)), source_(std::move(source)), target_(std::move(target)), lambda_(lambda) {
  if (cost_.rows() != source_.size() || cost_.cols() != target_.size()) {
    throw ConfigError("Problem: cost matrix is " + std::to_string(cost_.rows()) + "x" +
                      std::to_string(cost_.cols()) + " but histograms have sizes " +
                      std::to_string(source_.size()) + " and " + std::to_string(target_.size()));
  }
  if (!(lambda_ > 0.0) || !std::isfinite(lambda_)) {
    throw ConfigError("Problem: lambda must be positive and finite");
  }
  for (Index j = 0; j < cost_.cols(); ++j) {
    for (Index i = 0; i < cost_.rows(); ++i) {
      if (!std::isfinite(cost_(i, j)) || cost_(i, j) < 0.0) {
        throw ConfigError("Problem: cost entries must be finite and nonnegative");
      }
    }
  }
  validate_histogram(source_, "source");
  validate_histogram(target_, "target");
  source_ /= source_.sum();
  target_ /= target_.sum();
}

std::uint64_t Problem::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const std::int64_t dims[2] = {static_cast<std::int64_t>(rows()), static_cast<std::int64_t>(cols())};
  fnv_mix(h, dims, sizeof(dims));
  fnv_mix(h, &lambda_, sizeof(lambda_));
  fnv_mix(h, source_.data(), sizeof(double) * static_cast<std::size_t>(source_.size()));
  fnv_mix(h, target_.data(), sizeof(double) * static_cast<std::size_t>(target_.size()));
  fnv_mix(h, cost_.data(), sizeof(double) * static_cast<std::size_t>(cost_.size()));
  return h;
}

TransportPlan::TransportPlan(Matrix values) : values_(std::move(values)) {
  if (values_.rows() == 0 || values_.cols() == 0) throw ConfigError("TransportPlan: empty matrix");
  for (Index j = 0; j < values_.cols(); ++j) {
    for (Index i = 0; i < values_.rows(); ++i) {
      if (!std::isfinite(values_(i, j)) || values_(i, j) < 0.0) {
        throw ConstraintError("TransportPlan: entries must be finite and nonnegative");
      }
    }
  }
  column_mass_.resize(static_cast<std::size_t>(values_.cols()));
  for (Index j = 0; j < values_.cols(); ++j) column_mass_[static_cast<std::size_t>(j)] = values_.col(j).sum();
  recompute_row_sums();
}

TransportPlan TransportPlan::vertex_init(const Vector& target, Index rows) {
  Matrix t = Matrix::Zero(rows, target.size());
  t.row(0) = target.transpose();
  return TransportPlan(std::move(t));
}

void TransportPlan::update_column(Index i, const Eigen::Ref<const Vector>& new_column) {
  if (i < 0 || i >= cols()) throw ConfigError("update_column: column index out of range");
  if (new_column.size() != rows()) throw ConfigError("update_column: column length mismatch");
  double mass = 0.0;
  for (Index k = 0; k < new_column.size(); ++k) {
    const double v = new_column[k];
    if (!std::isfinite(v) || v < 0.0) {
      throw ConstraintError("update_column: entries must be finite and nonnegative");
    }
    mass += v;
  }
  if (std::abs(mass - column_mass(i)) > kColumnMassTolerance) {
    throw ConstraintError("update_column: column " + std::to_string(i) + " mass " +
                          std::to_string(mass) + " differs from " + std::to_string(column_mass(i)));
  }
  row_sums_ += new_column - values_.col(i);
  values_.col(i) = new_column;
  ++update_count_;
  if (update_count_ % kRowSumRefreshPeriod == 0) recompute_row_sums();
}

void TransportPlan::recompute_row_sums() { row_sums_ = values_.rowwise().sum(); }

void check_dimensions(const Problem& problem, const TransportPlan& plan) {
  if (plan.rows() != problem.rows() || plan.cols() != problem.cols()) {
    throw ConfigError("plan is " + std::to_string(plan.rows()) + "x" + std::to_string(plan.cols()) +
                      " but problem is " + std::to_string(problem.rows()) + "x" +
                      std::to_string(problem.cols()));
  }
}

double transport_cost(const Problem& problem, const TransportPlan& plan) {
  check_dimensions(problem, plan);
  return plan.values().cwiseProduct(problem.cost()).sum();
}

Vector row_residual(const Problem& problem, const TransportPlan& plan) {
  check_dimensions(problem, plan);
  return plan.row_sums() - problem.source();
}

double objective(const Problem& problem, const TransportPlan& plan) {
  const Vector residual = row_residual(problem, plan);
  return transport_cost(problem, plan) + residual.squaredNorm() / (2.0 * problem.lambda());
}

Vector gradient_column(const Problem& problem, const TransportPlan& plan, Index i) {
  if (i < 0 || i >= problem.cols()) throw ConfigError("gradient_column: column index out of range");
  return problem.cost().col(i) + row_residual(problem, plan) / problem.lambda();
}

Matrix gradient_matrix(const Problem& problem, const TransportPlan& plan) {
  const Vector shift = row_residual(problem, plan) / problem.lambda();
  return problem.cost().colwise() + shift;
}

Atom lmo_column(std::span<const double> grad, double mass, Index column) {
  if (grad.empty()) throw NumericError("lmo_column: empty gradient");
  Index best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grad.size(); ++k) {
    if (!std::isfinite(grad[k])) throw NumericError("lmo_column: non-finite gradient entry");
    if (grad[k] < best_value) {
      best_value = grad[k];
      best = static_cast<Index>(k);
    }
  }
  return Atom{column, best, mass};
}

Atom lmo_column(const Vector& grad, double mass, Index column) {
  return lmo_column(std::span<const double>(grad.data(), static_cast<std::size_t>(grad.size())), mass,
                    column);
}

double column_gap(const Problem& problem, const TransportPlan& plan, Index i) {
  if (i < 0 || i >= problem.cols()) throw ConfigError("column_gap: column index out of range");
  const Vector residual = row_residual(problem, plan);
  const Vector grad = problem.cost().col(i) + residual / problem.lambda();
  const Atom s = lmo_column(grad, problem.target()[i], i);
  Vector diff = plan.column(i);
  diff[s.row] -= s.value;
  return diff.dot(problem.cost().col(i)) + diff.dot(residual) / problem.lambda();
}

Matrix lmo_plan(const Problem& problem, const TransportPlan& plan) {
  const Matrix grad = gradient_matrix(problem, plan);
  Matrix s = Matrix::Zero(problem.rows(), problem.cols());
  for (Index i = 0; i < problem.cols(); ++i) {
    const Atom atom = lmo_column(Vector(grad.col(i)), problem.target()[i], i);
    s(atom.row, i) = atom.value;
  }
  return s;
}

GapReport duality_gap(const Problem& problem, const TransportPlan& plan) {
  check_dimensions(problem, plan);
  const Index n = problem.cols();
  const Vector residual = row_residual(problem, plan);
  const double inv_lambda = 1.0 / problem.lambda();

  GapReport report;
  report.per_column.resize(n);
  report.argmin_rows.resize(static_cast<std::size_t>(n));
  Matrix s = Matrix::Zero(problem.rows(), n);
  for (Index i = 0; i < n; ++i) {
    const Vector grad = problem.cost().col(i) + residual * inv_lambda;
    const Atom atom = lmo_column(grad, problem.target()[i], i);
    s(atom.row, i) = atom.value;
    report.argmin_rows[static_cast<std::size_t>(i)] = atom.row;
    Vector diff = plan.column(i);
    diff[atom.row] -= atom.value;
    report.per_column[i] = diff.dot(problem.cost().col(i)) + diff.dot(residual) * inv_lambda;
  }
  const Matrix delta = plan.values() - s;
  const Vector delta_rows = plan.row_sums() - s.rowwise().sum();
  report.total = delta.cwiseProduct(problem.cost()).sum() + delta_rows.dot(residual) * inv_lambda;
  return report;
}

double lagrangian_dual_value(const Problem& problem, const TransportPlan& plan, const Matrix& gradient) {
  check_dimensions(problem, plan);
  if (gradient.rows() != problem.rows() || gradient.cols() != problem.cols()) {
    throw ConfigError("lagrangian_dual_value: gradient shape mismatch");
  }
  double linear = 0.0;
  double minima = 0.0;
  for (Index i = 0; i < problem.cols(); ++i) {
    linear += plan.column(i).dot(gradient.col(i));
    minima += problem.target()[i] * gradient.col(i).minCoeff();
  }
  return objective(problem, plan) - linear + minima;
}

double lagrangian_dual_value(const Problem& problem, const TransportPlan& plan) {
  return lagrangian_dual_value(problem, plan, gradient_matrix(problem, plan));
}

CurvatureBounds curvature_bounds(const Problem& problem) {
  CurvatureBounds bounds;
  bounds.per_block = 4.0 * problem.target().array().square() / problem.lambda();
  bounds.total = std::min(4.0 / problem.lambda(), bounds.per_block.sum());
  return bounds;
}

}  // namespace srot
