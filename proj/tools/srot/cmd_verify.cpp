#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <ostream>

#include "cli.hpp"
#include "commands.hpp"
#include "common.hpp"
#include "srot/csv.hpp"
#include "srot/instance.hpp"
#include "srot/oracles.hpp"

namespace srot::cli {

namespace {

struct VerifyArgs {
  long seeds = 20;
  std::string sizes = "2..8";
  bool perturb_gradient = false;
};

struct Tally {
  std::string name;
  long cases = 0;
  long failures = 0;
  double worst = 0.0;  // largest violation margin seen (<= 0 when passing)

  void check(double value, double bound) {
    ++cases;
    const double margin = value - bound;
    if (!(margin <= 0.0)) ++failures;
    if (cases == 1 || margin > worst || std::isnan(margin)) worst = margin;
  }
};

std::vector<int> to_units(const Vector& h, int units) {
  std::vector<int> out;
  for (Index k = 0; k < h.size(); ++k) out.push_back(static_cast<int>(std::lround(h[k] * units)));
  return out;
}

int run_verify(const VerifyArgs& args, std::ostream& out) {
  if (args.seeds < 1) throw ConfigError("--seeds must be at least 1");
  const auto [lo, hi] = parse_range(args.sizes);
  if (lo < 1) throw ConfigError("--sizes must start at 1 or more");

  Tally gap_eq{"gap equivalence"};
  Tally weak{"weak duality"};
  Tally decomposition{"gap decomposition"};
  Tally gradient{"gradient vs finite differences"};
  Tally curvature{"block curvature bound"};
  Tally conservation{"column mass conservation"};
  Tally nonneg{"entry nonnegativity"};
  Tally line_search{"line-search optimality"};
  Tally descent{"monotone descent (ELS)"};
  Tally lp{"LP oracle equivalence"};
  Tally certificate{"LP reduced-cost certificate"};

  for (long s = 1; s <= args.seeds; ++s) {
    Rng rng(static_cast<std::uint64_t>(s));
    const auto span = static_cast<std::size_t>(hi - lo + 1);
    const Index m = lo + static_cast<Index>(rng.index(span));
    const Index n = lo + static_cast<Index>(rng.index(span));
    const double lambda = std::pow(10.0, rng.uniform(-3.0, 0.0));
    const Problem p = random_problem(m, n, lambda, rng.next());
    const TransportPlan t = random_feasible_plan(p.target(), m, rng);

    const double f = objective(p, t);
    Matrix g = gradient_matrix(p, t);
    if (args.perturb_gradient) g *= 1.0 + 1e-3;
    const double w = lagrangian_dual_value(p, t, g);
    const GapReport report = duality_gap(p, t);
    gap_eq.check(std::abs(report.total - (f - w)), 1e-9 * (1 + std::abs(f)));
    weak.check(w - f, 1e-12 * (1 + std::abs(f)));
    double sum = 0.0;
    for (Index i = 0; i < n; ++i) sum += column_gap(p, t, i);
    decomposition.check(std::abs(sum - report.total), 1e-10 * (1 + std::abs(report.total)));

    for (Index i = 0; i < n; ++i) {
      const Vector fd = oracles::finite_difference_column(p, t.values(), i);
      const Vector gi = gradient_column(p, t, i);
      gradient.check((fd - gi).norm(), 1e-5 * std::max(gi.norm(), 1.0));
    }

    const CurvatureBounds bounds = curvature_bounds(p);
    for (int k = 0; k < 200; ++k) {
      const Index i = static_cast<Index>(rng.index(static_cast<std::size_t>(n)));
      curvature.check(oracles::sample_block_curvature(p, i, rng), bounds.per_block[i] + 1e-9);
    }

    for (Variant variant : {Variant::Plain, Variant::Away, Variant::Pairwise}) {
      SolverOptions o;
      o.variant = variant;
      TransportPlan plan = t;
      ActiveSet active(plan);
      double before = objective(p, plan);
      double worst_rise = -INFINITY;
      for (long k = 0; k < 100; ++k) {
        const Index i = static_cast<Index>(rng.index(static_cast<std::size_t>(n)));
        bcfw_step(p, plan, i, o, k, &active, nullptr);
        const double after = objective(p, plan);
        worst_rise = std::max(worst_rise, after - before);
        before = after;
      }
      descent.check(worst_rise, 1e-12);
      conservation.check((plan.values().colwise().sum().transpose() - p.target()).cwiseAbs().maxCoeff(), 1e-10);
      nonneg.check(-plan.values().minCoeff(), 1e-15);
    }

    for (int k = 0; k < 5; ++k) {
      const Index i = static_cast<Index>(rng.index(static_cast<std::size_t>(n)));
      const Atom a = lmo_column(gradient_column(p, t, i), p.target()[i]);
      Vector d = -t.column(i);
      d[a.row] += a.value;
      const auto gamma = line_search_block(p, t, i, d, 1.0);
      if (!gamma) continue;
      Matrix moved = t.values();
      moved.col(i) += *gamma * d;
      line_search.check(oracles::objective_from_scratch(p, moved),
                        oracles::grid_minimum_block(p, t.values(), i, d, 1.0) + 1e-12);
    }

    const int units = static_cast<int>(std::max(m, n)) + 4;
    const Vector a = random_grid_histogram(m, units, rng);
    const Vector b = random_grid_histogram(n, units, rng);
    const LPPlan plan = lp_transport_solve(p.cost(), a, b);
    lp.check(std::abs(plan.cost - oracles::lp_basis_enumeration(p.cost(), to_units(a, units), to_units(b, units))),
             1e-9);
    certificate.check(-min_reduced_cost(p.cost(), plan), 1e-9);
  }

  const std::vector<const Tally*> tallies = {&gap_eq,       &weak,        &decomposition, &gradient,
                                             &curvature,    &conservation, &nonneg,        &line_search,
                                             &descent,      &lp,          &certificate};
  bool all = true;
  char line[160];
  std::snprintf(line, sizeof line, "%-32s %8s %9s  %-14s %s\n", "property", "cases", "failures", "worst margin",
                "status");
  out << line;
  for (const Tally* t : tallies) {
    const bool pass = t->failures == 0 && t->cases > 0;
    all = all && pass;
    std::snprintf(line, sizeof line, "%-32s %8ld %9ld  %-14s %s\n", t->name.c_str(), t->cases, t->failures,
                  format_double(t->worst).c_str(), pass ? "PASS" : "FAIL");
    out << line;
  }
  out << (all ? "all properties pass" : "some properties FAILED") << '\n';
  return all ? kExitOk : kExitError;
}

}  // namespace

Action setup_verify(CLI::App& app, std::ostream& out, std::ostream&) {
  auto args = std::make_shared<VerifyArgs>();
  app.add_option("--seeds", args->seeds, "number of random instances")->capture_default_str();
  app.add_option("--sizes", args->sizes, "range of m and n, as lo..hi")->capture_default_str();
  app.add_flag("--perturb-gradient", args->perturb_gradient,
               "inject a gradient fault into the dual evaluation (the suite must fail)");
  return [args, &out] { return run_verify(*args, out); };
}

}  // namespace srot::cli
