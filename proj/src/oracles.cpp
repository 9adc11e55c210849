#include "srot/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

#include "srot/error.hpp"

namespace srot::oracles {

double objective_from_scratch(const Problem& problem, const Matrix& plan) {
  double linear = 0.0;
  double penalty = 0.0;
  for (Index i = 0; i < plan.rows(); ++i) {
    double row = 0.0;
    for (Index j = 0; j < plan.cols(); ++j) {
      linear += plan(i, j) * problem.cost()(i, j);
      row += plan(i, j);
    }
    const double r = row - problem.source()[i];
    penalty += r * r;
  }
  return linear + penalty / (2.0 * problem.lambda());
}

namespace {

Matrix naive_gradient(const Problem& problem, const Matrix& plan) {
  Matrix g(plan.rows(), plan.cols());
  for (Index i = 0; i < plan.rows(); ++i) {
    double row = 0.0;
    for (Index j = 0; j < plan.cols(); ++j) row += plan(i, j);
    for (Index j = 0; j < plan.cols(); ++j) {
      g(i, j) = problem.cost()(i, j) + (row - problem.source()[i]) / problem.lambda();
    }
  }
  return g;
}

}  // namespace

double exhaustive_gap(const Problem& problem, const Matrix& plan) {
  const Index m = plan.rows();
  const Index n = plan.cols();
  const Matrix g = naive_gradient(problem, plan);
  const double base = plan.cwiseProduct(g).sum();
  std::vector<Index> choice(static_cast<std::size_t>(n), 0);
  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    double vertex = 0.0;
    for (Index j = 0; j < n; ++j) vertex += problem.target()[j] * g(choice[static_cast<std::size_t>(j)], j);
    best = std::max(best, base - vertex);
    Index pos = 0;
    while (pos < n && ++choice[static_cast<std::size_t>(pos)] == m) choice[static_cast<std::size_t>(pos++)] = 0;
    if (pos == n) break;
  }
  return best;
}

Vector finite_difference_column(const Problem& problem, const Matrix& plan, Index i, double step) {
  Vector out(plan.rows());
  for (Index r = 0; r < plan.rows(); ++r) {
    Matrix up = plan;
    Matrix down = plan;
    up(r, i) += step;
    down(r, i) -= step;
    out[r] = (objective_from_scratch(problem, up) - objective_from_scratch(problem, down)) / (2.0 * step);
  }
  return out;
}

double sample_block_curvature(const Problem& problem, Index i, Rng& rng) {
  const Index m = problem.rows();
  Matrix t(m, problem.cols());
  for (Index j = 0; j < problem.cols(); ++j) {
    Vector w(m);
    for (Index r = 0; r < m; ++r) w[r] = rng.uniform();
    // Occasionally concentrate on vertices, where the quotient is largest.
    if (rng.uniform() < 0.3) {
      w.setZero();
      w[static_cast<Index>(rng.index(static_cast<std::size_t>(m)))] = 1.0;
    }
    t.col(j) = w / w.sum() * problem.target()[j];
  }
  Vector s(m);
  for (Index r = 0; r < m; ++r) s[r] = rng.uniform();
  if (rng.uniform() < 0.5) {
    s.setZero();
    s[static_cast<Index>(rng.index(static_cast<std::size_t>(m)))] = 1.0;
  }
  s = s / s.sum() * problem.target()[i];
  const double gamma = 1.0 - rng.uniform();  // (0, 1]
  Matrix y = t;
  y.col(i) += gamma * (s - t.col(i));
  const Matrix g = naive_gradient(problem, t);
  const double gap = objective_from_scratch(problem, y) - objective_from_scratch(problem, t) -
                     (y.col(i) - t.col(i)).dot(g.col(i));
  return 2.0 / (gamma * gamma) * gap;
}

double lp_basis_enumeration(const Matrix& cost, const std::vector<int>& source_units,
                            const std::vector<int>& target_units) {
  const std::size_t m = source_units.size();
  const std::size_t n = target_units.size();
  const int total = std::accumulate(source_units.begin(), source_units.end(), 0);
  if (total != std::accumulate(target_units.begin(), target_units.end(), 0) || total <= 0) {
    throw ConfigError("lp_basis_enumeration: unbalanced unit marginals");
  }
  std::map<std::vector<int>, double> memo;
  std::function<double(const std::vector<int>&)> best = [&](const std::vector<int>& state) -> double {
    if (auto it = memo.find(state); it != memo.end()) return it->second;
    double value = std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (state[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (state[m + j] == 0) continue;
        any = true;
        const int flow = std::min(state[i], state[m + j]);
        std::vector<int> next = state;
        next[i] -= flow;
        next[m + j] -= flow;
        value = std::min(value, flow * cost(static_cast<Index>(i), static_cast<Index>(j)) + best(next));
      }
    }
    if (!any) value = 0.0;
    memo.emplace(state, value);
    return value;
  };
  std::vector<int> start(source_units);
  start.insert(start.end(), target_units.begin(), target_units.end());
  return best(start) / static_cast<double>(total);
}

double lp_spanning_tree_enumeration(const Matrix& cost, const Vector& source, const Vector& target) {
  const Index m = cost.rows();
  const Index n = cost.cols();
  const Index cells = m * n;
  const Index basis = m + n - 1;
  if (cells > 20) throw ConfigError("lp_spanning_tree_enumeration: instance too large");
  double best = std::numeric_limits<double>::infinity();
  std::vector<char> pick(static_cast<std::size_t>(cells), 0);
  std::fill(pick.begin(), pick.begin() + basis, 1);
  std::sort(pick.begin(), pick.end());
  do {
    std::vector<Index> chosen;
    for (Index k = 0; k < cells; ++k) {
      if (pick[static_cast<std::size_t>(k)]) chosen.push_back(k);
    }
    // Leaf elimination both checks the tree property and solves the flows.
    std::vector<double> residual(static_cast<std::size_t>(m + n));
    for (Index i = 0; i < m; ++i) residual[static_cast<std::size_t>(i)] = source[i];
    for (Index j = 0; j < n; ++j) residual[static_cast<std::size_t>(m + j)] = target[j];
    std::vector<char> used(chosen.size(), 0);
    std::vector<char> gone(static_cast<std::size_t>(m + n), 0);
    double value = 0.0;
    bool feasible = true;
    for (Index round = 0; round < basis && feasible; ++round) {
      bool progressed = false;
      for (Index node = 0; node < m + n && !progressed; ++node) {
        if (gone[static_cast<std::size_t>(node)]) continue;
        int degree = 0;
        std::size_t edge = 0;
        for (std::size_t e = 0; e < chosen.size(); ++e) {
          if (used[e]) continue;
          const Index r = chosen[e] / n;
          const Index c = m + chosen[e] % n;
          if (r == node || c == node) {
            ++degree;
            edge = e;
          }
        }
        if (degree != 1) continue;
        const Index r = chosen[edge] / n;
        const Index c = chosen[edge] % n;
        const Index partner = node == r ? m + c : r;
        const double x = residual[static_cast<std::size_t>(node)];
        if (x < -1e-12) feasible = false;
        value += x * cost(r, c);
        residual[static_cast<std::size_t>(partner)] -= x;
        residual[static_cast<std::size_t>(node)] = 0.0;
        used[edge] = 1;
        gone[static_cast<std::size_t>(node)] = 1;
        progressed = true;
      }
      if (!progressed) feasible = false;  // cycle: not a tree
    }
    if (feasible) {
      for (double r : residual) {
        if (std::abs(r) > 1e-9) feasible = false;
      }
    }
    if (feasible) best = std::min(best, value);
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

double grid_minimum_block(const Problem& problem, const Matrix& plan, Index i, const Vector& direction,
                          double gamma_max, int points) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < points; ++k) {
    const double gamma = gamma_max * static_cast<double>(k) / static_cast<double>(points - 1);
    Matrix y = plan;
    y.col(i) += gamma * direction;
    best = std::min(best, objective_from_scratch(problem, y));
  }
  return best;
}

double grid_minimum_full(const Problem& problem, const Matrix& plan, const Matrix& target_plan, int points) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < points; ++k) {
    const double gamma = static_cast<double>(k) / static_cast<double>(points - 1);
    best = std::min(best, objective_from_scratch(problem, (1.0 - gamma) * plan + gamma * target_plan));
  }
  return best;
}

}  // namespace srot::oracles
