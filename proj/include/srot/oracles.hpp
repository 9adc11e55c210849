#pragma once

// Brute-force reference computations. Each one is deliberately naive and
// shares no code path with the solver it checks.

#include <vector>

#include "srot/core.hpp"
#include "srot/rng.hpp"

namespace srot::oracles {

/// f(T) from the raw entries, without cached row sums.
double objective_from_scratch(const Problem& problem, const Matrix& plan);

/// max over all m^n vertex plans S' of <T - S', grad f(T)>.
double exhaustive_gap(const Problem& problem, const Matrix& plan);

/// Central finite difference of f with respect to column i (entry by entry).
Vector finite_difference_column(const Problem& problem, const Matrix& plan, Index i, double step = 1e-6);

/// One curvature quotient 2/gamma^2 * (f(Y) - f(T) - <y_i - t_i, grad_i f(T)>)
/// at Y = T + gamma (s_[i] - t_[i]) for a random feasible T, a random point
/// s_i of b_i Delta_m, and gamma ~ U(0, 1].
double sample_block_curvature(const Problem& problem, Index i, Rng& rng);

/// Minimum transport cost over all basic feasible solutions, by memoized
/// leaf elimination: every spanning-tree basis has a leaf whose cell carries
/// min(residual row, residual column). Marginals are integer counts that sum
/// to the same total; costs are charged per unit / total.
double lp_basis_enumeration(const Matrix& cost, const std::vector<int>& source_units,
                            const std::vector<int>& target_units);

/// Minimum over every subset of m+n-1 cells that forms a spanning tree and
/// yields nonnegative flows. Exponential; intended for m * n <= 16.
double lp_spanning_tree_enumeration(const Matrix& cost, const Vector& source, const Vector& target);

/// f evaluated along the block segment t_i + gamma * d on a uniform grid of
/// `points` values in [0, gamma_max]; returns the grid minimum.
double grid_minimum_block(const Problem& problem, const Matrix& plan, Index i, const Vector& direction,
                          double gamma_max, int points = 1001);

/// Same for the full segment (1 - gamma) T + gamma S over gamma in [0, 1].
double grid_minimum_full(const Problem& problem, const Matrix& plan, const Matrix& target_plan,
                         int points = 1001);

}  // namespace srot::oracles
