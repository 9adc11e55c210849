#include "srot/instance.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "srot/csv.hpp"
#include "srot/error.hpp"

namespace srot {

Vector random_histogram(Index size, Rng& rng) {
  Vector h(size);
  for (Index k = 0; k < size; ++k) h[k] = rng.uniform(0.05, 1.0);
  return h / h.sum();
}

Vector random_grid_histogram(Index size, int units, Rng& rng) {
  if (units < size) throw ConfigError("random_grid_histogram: need at least one unit per entry");
  Vector counts = Vector::Ones(size);
  for (int u = static_cast<int>(size); u < units; ++u) {
    counts[static_cast<Index>(rng.index(static_cast<std::size_t>(size)))] += 1.0;
  }
  return counts / static_cast<double>(units);
}

Problem random_problem(Index rows, Index cols, double lambda, std::uint64_t seed) {
  Rng rng(seed);
  Matrix cost(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) cost(i, j) = rng.uniform();
  }
  Vector a = random_histogram(rows, rng);
  Vector b = random_histogram(cols, rng);
  return Problem(std::move(cost), std::move(a), std::move(b), lambda);
}

TransportPlan random_feasible_plan(const Vector& target, Index rows, Rng& rng) {
  Matrix t(rows, target.size());
  for (Index j = 0; j < target.size(); ++j) {
    Vector w(rows);
    for (Index i = 0; i < rows; ++i) w[i] = rng.uniform();
    t.col(j) = w / w.sum() * target[j];
  }
  return TransportPlan(std::move(t));
}

Problem read_instance(std::istream& in, double lambda) {
  long long m = 0;
  long long n = 0;
  if (!(in >> m >> n) || m <= 0 || n <= 0) throw InputError("instance: bad header, expected 'm n'");
  Vector a(m);
  Vector b(n);
  Matrix c(m, n);
  for (Index i = 0; i < m; ++i) {
    if (!(in >> a[i])) throw InputError("instance: truncated source histogram");
  }
  for (Index j = 0; j < n; ++j) {
    if (!(in >> b[j])) throw InputError("instance: truncated target histogram");
  }
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (!(in >> c(i, j))) throw InputError("instance: truncated cost matrix");
    }
  }
  return Problem(std::move(c), std::move(a), std::move(b), lambda);
}

void write_instance(std::ostream& out, const Problem& problem) {
  out << problem.rows() << ' ' << problem.cols() << '\n';
  auto line = [&out](const auto& values) {
    for (Index k = 0; k < values.size(); ++k) {
      if (k) out << ' ';
      out << format_double(values[k]);
    }
    out << '\n';
  };
  line(problem.source());
  line(problem.target());
  for (Index i = 0; i < problem.rows(); ++i) line(Vector(problem.cost().row(i).transpose()));
}

}  // namespace srot
