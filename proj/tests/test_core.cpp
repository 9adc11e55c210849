#include <doctest.h>

#include <cmath>

#include "srot/baselines.hpp"
#include "srot/core.hpp"
#include "srot/error.hpp"
#include "srot/instance.hpp"
#include "srot/oracles.hpp"

using namespace srot;

namespace {

Problem swap_problem(double lambda) {
  Matrix c(2, 2);
  c << 0, 1, 1, 0;
  return Problem(c, Vector::Constant(2, 0.5), Vector::Constant(2, 0.5), lambda);
}

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("problem validation") {
  Matrix c = Matrix::Ones(2, 3);
  CHECK_THROWS_AS(Problem(c, Vector::Constant(2, 0.5), Vector::Constant(2, 0.5), 1.0), ConfigError);
  CHECK_THROWS_AS(Problem(c, Vector::Constant(2, 0.5), Vector::Constant(3, 1.0 / 3), 0.0), ConfigError);
  CHECK_THROWS_AS(Problem(c, Vector::Constant(2, 0.6), Vector::Constant(3, 1.0 / 3), 1.0), ConfigError);
  Matrix negative = c;
  negative(0, 0) = -1;
  CHECK_THROWS_AS(Problem(negative, Vector::Constant(2, 0.5), Vector::Constant(3, 1.0 / 3), 1.0), ConfigError);
  Matrix inf = c;
  inf(1, 2) = INFINITY;
  CHECK_THROWS_AS(Problem(inf, Vector::Constant(2, 0.5), Vector::Constant(3, 1.0 / 3), 1.0), ConfigError);

  // Off by less than the tolerance: accepted and renormalized.
  Vector a(2);
  a << 0.5 + 4e-13, 0.5;
  const Problem p(c, a, Vector::Constant(3, 1.0 / 3), 1.0);
  CHECK(std::abs(p.source().sum() - 1.0) <= 1e-15);
}

TEST_CASE("objective") {
  const Problem p = swap_problem(1.0);
  CHECK(objective(p, TransportPlan(mat2(0.5, 0, 0, 0.5))) == doctest::Approx(0.0));
  CHECK(objective(p, TransportPlan(mat2(0.5, 0.5, 0, 0))) == doctest::Approx(0.75));

  const Problem q = random_problem(4, 4, 0.3, 7);
  Rng rng(7);
  const TransportPlan t = random_feasible_plan(q.target(), 4, rng);
  CHECK(std::abs(objective(q, t) - oracles::objective_from_scratch(q, t.values())) <= 1e-12);

  CHECK_THROWS_AS(objective(q, TransportPlan(Matrix::Ones(3, 4))), ConfigError);
}

TEST_CASE("gradient column") {
  // Row sums equal to a: the penalty gradient vanishes.
  const Problem p = swap_problem(0.7);
  const TransportPlan t(mat2(0.25, 0.25, 0.25, 0.25));
  CHECK((gradient_column(p, t, 1) - p.cost().col(1)).norm() == 0.0);

  // Large lambda: approaches the cost column.
  const TransportPlan skewed(mat2(0.5, 0.5, 0, 0));
  const Problem loose = swap_problem(1e12);
  CHECK((gradient_column(loose, skewed, 0) - loose.cost().col(0)).cwiseAbs().maxCoeff() < 1e-11);

  // Finite differences.
  const Problem q = random_problem(3, 3, 0.5, 11);
  Rng rng(11);
  const TransportPlan r = random_feasible_plan(q.target(), 3, rng);
  for (Index i = 0; i < 3; ++i) {
    const Vector fd = oracles::finite_difference_column(q, r.values(), i);
    const Vector g = gradient_column(q, r, i);
    CHECK((fd - g).cwiseAbs().maxCoeff() <= 1e-6);
    CHECK((fd - g).norm() <= 1e-5 * g.norm());
  }
  CHECK_THROWS_AS(gradient_column(q, r, 3), ConfigError);
}

TEST_CASE("lmo column") {
  Vector g(3);
  g << 3, 1, 2;
  Atom s = lmo_column(g, 0.4, 5);
  CHECK(s.row == 1);
  CHECK(s.value == 0.4);
  CHECK(s.column == 5);

  CHECK(lmo_column(Vector::Constant(3, 2.0), 0.1).row == 0);

  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Vector c(9);
    for (Index k = 0; k < 9; ++k) c[k] = rng.uniform();
    const Vector grad = -c;
    // Enumerate every vertex e_k and keep the best linear value.
    Index best = 0;
    for (Index k = 1; k < 9; ++k) {
      if (grad.dot(Vector::Unit(9, k)) < grad.dot(Vector::Unit(9, best))) best = k;
    }
    CHECK(lmo_column(grad, 1.0).row == best);
  }

  CHECK_THROWS_AS(lmo_column(Vector(), 1.0), NumericError);
  Vector bad = Vector::Zero(3);
  bad[1] = NAN;
  CHECK_THROWS_AS(lmo_column(bad, 1.0), NumericError);
}

TEST_CASE("duality gap") {
  SUBCASE("vanishes at a certified optimum") {
    const Problem p = random_problem(3, 3, 0.2, 1);
    const ReferenceOptimum ref = reference_optimum(p);
    REQUIRE(ref.certified);
    CHECK(duality_gap(p, ref.plan).total <= 1e-8);
    CHECK(std::abs(lagrangian_dual_value(p, ref.plan) - objective(p, ref.plan)) <= 1e-8);
  }
  SUBCASE("2x2 exhaustive vertex enumeration") {
    const Problem p = random_problem(2, 2, 0.3, 5);
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const TransportPlan t = random_feasible_plan(p.target(), 2, rng);
      CHECK(std::abs(duality_gap(p, t).total - oracles::exhaustive_gap(p, t.values())) <= 1e-10);
    }
  }
  SUBCASE("4x4 matches the Lagrangian gap") {
    const Problem p = random_problem(4, 4, 0.1, 9);
    Rng rng(9);
    const TransportPlan t = random_feasible_plan(p.target(), 4, rng);
    const double f = objective(p, t);
    CHECK(std::abs(duality_gap(p, t).total - (f - lagrangian_dual_value(p, t))) <= 1e-9);
  }
  SUBCASE("seed 13 cross-check") {
    const Problem p = random_problem(5, 3, 0.05, 13);
    Rng rng(13);
    const TransportPlan t = random_feasible_plan(p.target(), 5, rng);
    CHECK(std::abs(objective(p, t) - lagrangian_dual_value(p, t) - duality_gap(p, t).total) <= 1e-9);
  }
}

TEST_CASE("column gap") {
  // Column already at its LMO vertex and row sums equal to a.
  const Problem p = swap_problem(1.0);
  const TransportPlan opt(mat2(0.5, 0, 0, 0.5));
  CHECK(column_gap(p, opt, 0) == doctest::Approx(0.0));
  CHECK(column_gap(p, opt, 1) == doctest::Approx(0.0));

  const Problem q = random_problem(4, 3, 0.25, 2);
  Rng rng(2);
  const TransportPlan t = random_feasible_plan(q.target(), 4, rng);
  const GapReport report = duality_gap(q, t);
  double sum = 0.0;
  for (Index i = 0; i < 3; ++i) {
    const double g = column_gap(q, t, i);
    CHECK(g >= -1e-12);
    CHECK(g == doctest::Approx(report.per_column[i]).epsilon(1e-12));
    sum += g;
  }
  CHECK(std::abs(sum - report.total) <= 1e-10 * (1 + std::abs(report.total)));
  CHECK_THROWS_AS(column_gap(q, t, -1), ConfigError);
}

TEST_CASE("duality properties on random instances") {
  Rng meta(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const Index m = 2 + static_cast<Index>(meta.index(10));
    const Index n = 2 + static_cast<Index>(meta.index(10));
    const double lambda = std::pow(10.0, meta.uniform(-3.0, 0.0));
    const Problem p = random_problem(m, n, lambda, meta.next());
    const TransportPlan t = random_feasible_plan(p.target(), m, meta);
    const double f = objective(p, t);
    const double w = lagrangian_dual_value(p, t);
    const GapReport g = duality_gap(p, t);
    CHECK(w <= f + 1e-12 * (1 + std::abs(f)));
    CHECK(std::abs(g.total - (f - w)) <= 1e-9 * (1 + std::abs(f)));
    CHECK(std::abs(g.per_column.sum() - g.total) <= 1e-10 * (1 + std::abs(g.total)));
    CHECK(g.per_column.minCoeff() >= -1e-12);
    CHECK(g.total >= -1e-10 * (1 + std::abs(f)));
  }
}

TEST_CASE("curvature bounds") {
  Matrix c = Matrix::Ones(3, 4);
  const Problem uniform(c, Vector::Constant(3, 1.0 / 3), Vector::Constant(4, 0.25), 1.0);
  const CurvatureBounds cb = curvature_bounds(uniform);
  for (Index i = 0; i < 4; ++i) CHECK(cb.per_block[i] == doctest::Approx(0.25));
  CHECK(cb.total == doctest::Approx(1.0));

  Vector point = Vector::Zero(4);
  point[0] = 1.0;
  const Problem degenerate(c, Vector::Constant(3, 1.0 / 3), point, 0.5);
  CHECK(curvature_bounds(degenerate).total == doctest::Approx(8.0));

  const Problem p = random_problem(5, 4, 0.05, 77);
  const CurvatureBounds bounds = curvature_bounds(p);
  Rng rng(77);
  double worst = 0.0;
  for (int s = 0; s < 10000; ++s) {
    const Index i = static_cast<Index>(rng.index(4));
    const double q = oracles::sample_block_curvature(p, i, rng);
    worst = std::max(worst, q / bounds.per_block[i]);
    REQUIRE(q <= bounds.per_block[i] + 1e-9);
  }
  CHECK(worst > 0.1);  // the sampler actually probes the bound
}

TEST_CASE("update column") {
  Rng rng(4);
  const Vector b = random_histogram(5, rng);
  TransportPlan t = random_feasible_plan(b, 6, rng);

  SUBCASE("replace with itself") {
    const Matrix before = t.values();
    const Vector sums = t.row_sums();
    t.update_column(2, Vector(t.column(2)));
    CHECK(t.values() == before);
    CHECK((t.row_sums() - sums).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("move a column onto a vertex") {
    const double before = t.row_sums()[0];
    const double t0 = t.values()(0, 3);
    Vector vertex = Vector::Zero(6);
    vertex[0] = b[3];
    t.update_column(3, vertex);
    CHECK(t.row_sums()[0] == doctest::Approx(before + b[3] - t0).epsilon(1e-14));
  }
  SUBCASE("mass violation is rejected") {
    Vector heavy = t.column(1);
    heavy[0] += 1e-6;
    const Matrix before = t.values();
    CHECK_THROWS_AS(t.update_column(1, heavy), ConstraintError);
    CHECK(t.values() == before);
    Vector negative = Vector::Zero(6);
    negative[0] = b[1] + 0.1;
    negative[1] = -0.1;
    CHECK_THROWS_AS(t.update_column(1, negative), ConstraintError);
  }
  SUBCASE("row sums do not drift") {
    for (int k = 0; k < 100000; ++k) {
      const Index i = static_cast<Index>(rng.index(5));
      Vector w(6);
      for (Index r = 0; r < 6; ++r) w[r] = rng.uniform();
      Vector col = w / w.sum() * b[i];
      // Absorb the rounding of the rescale so the mass check is exact-ish.
      col[0] += b[i] - col.sum();
      col[0] = std::max(col[0], 0.0);
      t.update_column(i, col);
    }
    CHECK((t.row_sums() - t.values().rowwise().sum()).cwiseAbs().maxCoeff() <= 1e-9);
  }
}
