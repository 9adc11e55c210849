#pragma once

// Semi-relaxed optimal transport: problem data, transport plans, and the
// first-order machinery shared by every solver.
//
//   minimize   f(T) = <T, C> + 1/(2 lambda) * ||T 1_n - a||^2
//   subject to T >= 0,  T^T 1_m = b
//
// The feasible set is the product of n scaled simplices b_i * Delta_m, one
// per column, so the linear minimization oracle and the duality gap both
// decompose column by column.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace srot {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kHistogramTolerance = 1e-12;
inline constexpr double kColumnMassTolerance = 1e-10;
inline constexpr int kRowSumRefreshPeriod = 1024;

/// Cost matrix, source/target histograms and relaxation parameter.
///
/// Construction validates every invariant and renormalizes both histograms
/// exactly once, so later code may rely on sum(a) == sum(b) == 1 to the last
/// bit that division allows.
class Problem {
 public:
  Problem(Matrix cost, Vector source, Vector target, double lambda);

  const Matrix& cost() const { return cost_; }
  const Vector& source() const { return source_; }
  const Vector& target() const { return target_; }
  double lambda() const { return lambda_; }
  Index rows() const { return cost_.rows(); }
  Index cols() const { return cost_.cols(); }

  /// FNV-1a digest over dimensions, lambda and all entries; used to tag traces.
  std::uint64_t digest() const;

 private:
  Matrix cost_;
  Vector source_;
  Vector target_;
  double lambda_;
};

/// Nonnegative m x n plan with row sums T 1_n cached and maintained
/// incrementally as columns are replaced.
class TransportPlan {
 public:
  explicit TransportPlan(Matrix values);

  /// All mass of column i on row 0: T = (b_1 e_1, ..., b_n e_1).
  static TransportPlan vertex_init(const Vector& target, Index rows);

  const Matrix& values() const { return values_; }
  const Vector& row_sums() const { return row_sums_; }
  Index rows() const { return values_.rows(); }
  Index cols() const { return values_.cols(); }
  auto column(Index i) const { return values_.col(i); }

  /// Mass each column carried at construction; every update must preserve it.
  double column_mass(Index i) const { return column_mass_[static_cast<std::size_t>(i)]; }

  /// Replace column i. The new column must be nonnegative with the same mass
  /// (within kColumnMassTolerance); otherwise ConstraintError is thrown and the
  /// plan is left untouched. Row sums are updated by the difference and fully
  /// recomputed every kRowSumRefreshPeriod updates.
  void update_column(Index i, const Eigen::Ref<const Vector>& new_column);

  void recompute_row_sums();

  std::uint64_t update_count() const { return update_count_; }

 private:
  Matrix values_;
  Vector row_sums_;
  std::vector<double> column_mass_;
  std::uint64_t update_count_ = 0;
};

/// A scaled simplex vertex b_i * e_row placed in column `column`.
struct Atom {
  Index column = 0;
  Index row = 0;
  double value = 0.0;
};

struct GapReport {
  double total = 0.0;
  Vector per_column;
  std::vector<Index> argmin_rows;
};

struct CurvatureBounds {
  Vector per_block;  // 4 b_i^2 / lambda
  double total = 0.0;  // min(4/lambda, sum of per_block)
};

/// Throws ConfigError unless the plan has the problem's shape.
void check_dimensions(const Problem& problem, const TransportPlan& plan);

double transport_cost(const Problem& problem, const TransportPlan& plan);

/// f(T), evaluated from the cached row sums.
double objective(const Problem& problem, const TransportPlan& plan);

/// Residual T 1_n - a from the cached row sums.
Vector row_residual(const Problem& problem, const TransportPlan& plan);

/// c_i + (T 1_n - a) / lambda.
Vector gradient_column(const Problem& problem, const TransportPlan& plan, Index i);

/// Full gradient, column i equal to gradient_column(i).
Matrix gradient_matrix(const Problem& problem, const TransportPlan& plan);

/// b_i e_j with j the first index attaining min(grad).
Atom lmo_column(std::span<const double> grad, double mass, Index column = 0);
Atom lmo_column(const Vector& grad, double mass, Index column = 0);

/// g_i(T) = <t_i - s_i, c_i> + <t_i - s_i, T 1_n - a> / lambda.
double column_gap(const Problem& problem, const TransportPlan& plan, Index i);

/// Linearization duality gap with its column decomposition.
GapReport duality_gap(const Problem& problem, const TransportPlan& plan);

/// The full LMO plan S = (s_1, ..., s_n).
Matrix lmo_plan(const Problem& problem, const TransportPlan& plan);

/// Lagrangian dual objective
///   w(T) = f(T) - sum_i <t_i, grad_i> + sum_i b_i min_j (grad_i)_j.
double lagrangian_dual_value(const Problem& problem, const TransportPlan& plan);

/// Same, with caller-supplied gradient columns (used by diagnostics that
/// inject deliberate faults).
double lagrangian_dual_value(const Problem& problem, const TransportPlan& plan,
                             const Matrix& gradient);

CurvatureBounds curvature_bounds(const Problem& problem);

}  // namespace srot
