#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "srot/baselines.hpp"
#include "srot/error.hpp"

namespace srot {

namespace {

constexpr double kBalanceTolerance = 1e-10;
constexpr double kPerturbation = 1e-12;
constexpr double kRecoveryTolerance = 1e-9;
constexpr int kDegenerateStreakForBland = 50;

struct Cell {
  Index row;
  Index col;
};

// Basis of the transportation simplex: m + n - 1 cells forming a spanning
// tree of the bipartite row/column graph. Nodes 0..m-1 are rows, m..m+n-1
// are columns.
class BasisTree {
 public:
  BasisTree(Index m, Index n) : m_(m), n_(n), adjacency_(static_cast<std::size_t>(m + n)) {}

  void rebuild(const std::vector<Cell>& cells) {
    for (auto& list : adjacency_) list.clear();
    for (std::size_t k = 0; k < cells.size(); ++k) {
      adjacency_[static_cast<std::size_t>(cells[k].row)].push_back(k);
      adjacency_[static_cast<std::size_t>(m_ + cells[k].col)].push_back(k);
    }
  }

  Index other(const Cell& c, Index node) const { return node == c.row ? m_ + c.col : c.row; }

  void potentials(const Matrix& cost, const std::vector<Cell>& cells, Vector& u, Vector& v) const {
    u = Vector::Constant(m_, std::numeric_limits<double>::quiet_NaN());
    v = Vector::Constant(n_, std::numeric_limits<double>::quiet_NaN());
    std::vector<char> seen(static_cast<std::size_t>(m_ + n_), 0);
    std::vector<Index> stack{0};
    u[0] = 0.0;
    seen[0] = 1;
    while (!stack.empty()) {
      const Index node = stack.back();
      stack.pop_back();
      for (std::size_t k : adjacency_[static_cast<std::size_t>(node)]) {
        const Cell& c = cells[k];
        const Index next = other(c, node);
        if (seen[static_cast<std::size_t>(next)]) continue;
        seen[static_cast<std::size_t>(next)] = 1;
        if (next >= m_) {
          v[next - m_] = cost(c.row, c.col) - u[c.row];
        } else {
          u[next] = cost(c.row, c.col) - v[c.col];
        }
        stack.push_back(next);
      }
    }
    for (char s : seen) {
      if (!s) throw InternalError("lp_transport_solve: basis is not a spanning tree");
    }
  }

  // Basis cells on the tree path from column node of `col` to row node `row`,
  // ordered starting at the column end.
  std::vector<std::size_t> path(const std::vector<Cell>& cells, Index row, Index col) const {
    const std::size_t total = static_cast<std::size_t>(m_ + n_);
    std::vector<long> via(total, -1);
    std::vector<char> seen(total, 0);
    std::queue<Index> queue;
    queue.push(row);
    seen[static_cast<std::size_t>(row)] = 1;
    const Index goal = m_ + col;
    while (!queue.empty()) {
      const Index node = queue.front();
      queue.pop();
      if (node == goal) break;
      for (std::size_t k : adjacency_[static_cast<std::size_t>(node)]) {
        const Index next = other(cells[k], node);
        if (seen[static_cast<std::size_t>(next)]) continue;
        seen[static_cast<std::size_t>(next)] = 1;
        via[static_cast<std::size_t>(next)] = static_cast<long>(k);
        queue.push(next);
      }
    }
    if (!seen[static_cast<std::size_t>(goal)]) throw InternalError("lp_transport_solve: no basis path");
    std::vector<std::size_t> out;
    Index node = goal;
    while (node != row) {
      const auto k = static_cast<std::size_t>(via[static_cast<std::size_t>(node)]);
      out.push_back(k);
      node = other(cells[k], node);
    }
    return out;
  }

  // Flows of the basic solution for the given marginals, by leaf elimination.
  std::vector<double> flows(const std::vector<Cell>& cells, const Vector& source, const Vector& target) const {
    const std::size_t total = static_cast<std::size_t>(m_ + n_);
    std::vector<double> residual(total);
    for (Index i = 0; i < m_; ++i) residual[static_cast<std::size_t>(i)] = source[i];
    for (Index j = 0; j < n_; ++j) residual[static_cast<std::size_t>(m_ + j)] = target[j];
    std::vector<int> degree(total, 0);
    for (std::size_t node = 0; node < total; ++node) degree[node] = static_cast<int>(adjacency_[node].size());
    std::vector<char> used(cells.size(), 0);
    std::vector<double> x(cells.size(), 0.0);
    std::vector<Index> leaves;
    for (std::size_t node = 0; node < total; ++node) {
      if (degree[node] == 1) leaves.push_back(static_cast<Index>(node));
    }
    while (!leaves.empty()) {
      const Index leaf = leaves.back();
      leaves.pop_back();
      if (degree[static_cast<std::size_t>(leaf)] != 1) continue;
      std::size_t edge = cells.size();
      for (std::size_t k : adjacency_[static_cast<std::size_t>(leaf)]) {
        if (!used[k]) {
          edge = k;
          break;
        }
      }
      used[edge] = 1;
      const Index partner = other(cells[edge], leaf);
      x[edge] = residual[static_cast<std::size_t>(leaf)];
      residual[static_cast<std::size_t>(partner)] -= x[edge];
      residual[static_cast<std::size_t>(leaf)] = 0.0;
      degree[static_cast<std::size_t>(leaf)] = 0;
      if (--degree[static_cast<std::size_t>(partner)] == 1) leaves.push_back(partner);
    }
    return x;
  }

 private:
  Index m_;
  Index n_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

void validate_marginal(const Vector& h, const char* name) {
  for (Index k = 0; k < h.size(); ++k) {
    if (!std::isfinite(h[k]) || h[k] < 0.0) {
      throw InputError(std::string("lp_transport_solve: ") + name + " must be finite and nonnegative");
    }
  }
}

}  // namespace

LPPlan lp_transport_solve(const Matrix& cost, const Vector& source, const Vector& target) {
  const Index m = cost.rows();
  const Index n = cost.cols();
  if (m == 0 || n == 0 || source.size() != m || target.size() != n) {
    throw InputError("lp_transport_solve: dimension mismatch");
  }
  validate_marginal(source, "source");
  validate_marginal(target, "target");
  if (!cost.allFinite()) throw InputError("lp_transport_solve: cost must be finite");
  if (std::abs(source.sum() - target.sum()) > kBalanceTolerance) {
    throw InputError("lp_transport_solve: unbalanced marginals");
  }

  // Distinct row perturbations keep partial sums of rows and columns apart,
  // which rules out degenerate bases in exact arithmetic.
  Vector rows = source;
  Vector cols = target;
  for (Index i = 0; i < m; ++i) rows[i] += kPerturbation * static_cast<double>(i + 1);
  cols[n - 1] += rows.sum() - cols.sum();

  // Northwest-corner start; every step advances exactly one index.
  std::vector<Cell> cells;
  std::vector<double> flow;
  {
    Vector ra = rows;
    Vector rb = cols;
    Index i = 0;
    Index j = 0;
    while (true) {
      const double x = std::min(ra[i], rb[j]);
      cells.push_back({i, j});
      flow.push_back(x);
      ra[i] -= x;
      rb[j] -= x;
      if (i == m - 1 && j == n - 1) break;
      if (i == m - 1) {
        ++j;
      } else if (j == n - 1) {
        ++i;
      } else if (ra[i] <= rb[j]) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  const double scale = std::max(1.0, cost.cwiseAbs().maxCoeff());
  const double entering_tolerance = 1e-12 * scale;
  const long budget = 50L * static_cast<long>(m) * static_cast<long>(n) + 10000L;

  BasisTree tree(m, n);
  Vector u;
  Vector v;
  long pivots = 0;
  int degenerate_streak = 0;
  while (true) {
    tree.rebuild(cells);
    tree.potentials(cost, cells, u, v);

    const bool bland = degenerate_streak >= kDegenerateStreakForBland;
    Index enter_row = -1;
    Index enter_col = -1;
    double best = -entering_tolerance;
    for (Index i = 0; i < m && !(bland && enter_row >= 0); ++i) {
      for (Index j = 0; j < n; ++j) {
        const double reduced = cost(i, j) - u[i] - v[j];
        if (reduced < best) {
          enter_row = i;
          enter_col = j;
          if (bland) break;
          best = reduced;
        }
      }
    }
    if (enter_row < 0) break;
    if (++pivots > budget) throw InternalError("lp_transport_solve: pivot budget exhausted (cycling?)");

    // Cycle: entering cell (+), then alternating (-, +, ...) along the tree
    // path from its column back to its row.
    const std::vector<std::size_t> path = tree.path(cells, enter_row, enter_col);
    double theta = std::numeric_limits<double>::infinity();
    std::size_t leaving = cells.size();
    for (std::size_t p = 0; p < path.size(); p += 2) {
      const std::size_t k = path[p];
      const bool better = flow[k] < theta;
      const bool tie_smaller =
          flow[k] == theta && (cells[k].row * n + cells[k].col) < (cells[leaving].row * n + cells[leaving].col);
      if (better || tie_smaller) {
        theta = flow[k];
        leaving = k;
      }
    }
    for (std::size_t p = 0; p < path.size(); ++p) {
      const std::size_t k = path[p];
      flow[k] += (p % 2 == 0) ? -theta : theta;
    }
    degenerate_streak = theta <= 1e-15 ? degenerate_streak + 1 : 0;
    cells[leaving] = {enter_row, enter_col};
    flow[leaving] = theta;
  }

  // Drop the perturbation: re-solve the final basis with the true marginals.
  tree.rebuild(cells);
  const std::vector<double> exact = tree.flows(cells, source, target);
  LPPlan out;
  out.plan = Matrix::Zero(m, n);
  for (std::size_t k = 0; k < cells.size(); ++k) {
    double x = exact[k];
    if (x < 0.0) {
      if (x < -kRecoveryTolerance) throw InternalError("lp_transport_solve: infeasible basis after recovery");
      x = 0.0;
    }
    out.plan(cells[k].row, cells[k].col) = x;
    out.basis.emplace_back(cells[k].row, cells[k].col);
  }
  out.cost = out.plan.cwiseProduct(cost).sum();
  out.pivots = pivots;
  return out;
}

double min_reduced_cost(const Matrix& cost, const LPPlan& lp) {
  const Index m = cost.rows();
  const Index n = cost.cols();
  std::vector<Cell> cells;
  for (const auto& [r, c] : lp.basis) cells.push_back({r, c});
  if (static_cast<Index>(cells.size()) != m + n - 1) throw InternalError("min_reduced_cost: basis size");
  BasisTree tree(m, n);
  tree.rebuild(cells);
  Vector u;
  Vector v;
  tree.potentials(cost, cells, u, v);
  double lowest = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) lowest = std::min(lowest, cost(i, j) - u[i] - v[j]);
  }
  return lowest;
}

}  // namespace srot
