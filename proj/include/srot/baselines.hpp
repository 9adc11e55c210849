#pragma once

// Reference solvers used to benchmark and certify the Frank-Wolfe family:
// projected gradient / FISTA on the product of scaled simplices, an exact
// transportation-simplex LP solver, and a gap-certified reference optimum.

#include <optional>
#include <utility>
#include <vector>

#include "srot/core.hpp"
#include "srot/solvers.hpp"

namespace srot {

/// Euclidean projection of v onto {x >= 0 : sum(x) = mass} (sort and threshold).
Vector project_scaled_simplex(const Vector& v, double mass);

struct GradientOptions {
  /// Defaults to lambda / n, the reciprocal of the penalty Hessian's norm.
  std::optional<double> stepsize;
  long max_iterations = 1000;
  double tolerance = 1e-6;
  /// Iterations between duality-gap evaluations (and trace records).
  long check_period = 1;
  bool record_time = true;
  const Matrix* lp_plan = nullptr;
  std::optional<TransportPlan> warm_start;
};

/// Column-wise projected gradient descent.
Solution pgd_solve(const Problem& problem, const GradientOptions& options = {});

/// FISTA with the standard t_{k+1} = (1 + sqrt(1 + 4 t_k^2)) / 2 momentum.
Solution fista_solve(const Problem& problem, const GradientOptions& options = {});

// ---------------------------------------------------------------------------

struct LPPlan {
  Matrix plan;
  double cost = 0.0;
  /// Basic cells (row, col) of the final spanning-tree basis.
  std::vector<std::pair<Index, Index>> basis;
  Index basis_size() const { return static_cast<Index>(basis.size()); }
  long pivots = 0;
};

/// Exact balanced transport LP min <T, C> s.t. T 1 = a, T^T 1 = b, T >= 0 by
/// the transportation simplex: northwest-corner start, MODI potentials,
/// Dantzig pricing with Bland's rule after a run of degenerate pivots.
/// Throws InputError for unbalanced marginals and InternalError when the pivot
/// budget is exhausted.
LPPlan lp_transport_solve(const Matrix& cost, const Vector& source, const Vector& target);

/// Smallest reduced cost C_ij - u_i - v_j over all cells, with potentials
/// solved on the plan's basis tree. Optimality certificate: >= -1e-9.
double min_reduced_cost(const Matrix& cost, const LPPlan& lp);

// ---------------------------------------------------------------------------

enum class ReferencePath { FistaThenPairwise, FistaOnly, PairwiseOnly };

struct ReferenceOptions {
  double tolerance = 1e-10;
  ReferencePath path = ReferencePath::FistaThenPairwise;
  long fista_iterations = 20000;
  long pairwise_epochs = 200000;
  std::uint64_t seed = 0;
};

struct ReferenceOptimum {
  double f_star = 0.0;
  TransportPlan plan;
  double gap = 0.0;
  bool certified = false;
};

/// Objective value within `tolerance` of the optimum, certified by the duality
/// gap at the returned plan (f_star - f* <= gap <= tolerance when certified).
ReferenceOptimum reference_optimum(const Problem& problem, const ReferenceOptions& options = {});

}  // namespace srot
