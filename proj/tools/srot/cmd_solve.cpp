#include <fstream>
#include <memory>
#include <ostream>

#include "cli.hpp"
#include "commands.hpp"
#include "common.hpp"
#include "srot/csv.hpp"
#include "srot/error.hpp"
#include "srot/instance.hpp"

namespace srot::cli {

namespace {

struct SolveArgs {
  std::string gen;
  std::string instance;
  long m = 16;
  long n = 16;
  double lambda = 0.0;
  std::string out = "srot-out";
  bool timing = false;
  bool no_lp = false;
  SolverFlags solver;
};

int run_solve(const SolveArgs& args, std::ostream& out) {
  const SolverOptions options = to_options(args.solver);
  const Problem problem = [&] {
    if (!args.instance.empty()) {
      std::ifstream in(args.instance);
      if (!in) throw InputError("cannot open instance " + args.instance);
      return read_instance(in, args.lambda);
    }
    if (args.gen != "random") throw ConfigError("unknown generator '" + args.gen + "'");
    if (args.m < 1 || args.n < 1) throw ConfigError("--m and --n must be positive");
    return random_problem(args.m, args.n, args.lambda, args.solver.seed);
  }();

  std::optional<LPPlan> lp;
  if (!args.no_lp) lp = lp_transport_solve(problem.cost(), problem.source(), problem.target());
  SolveContext ctx;
  ctx.record_time = args.timing;
  ctx.lp_plan = lp ? &lp->plan : nullptr;
  const Solution solution = solve(problem, options, ctx);

  const std::filesystem::path dir(args.out);
  ensure_directory(dir);
  write_plan(dir / "plan.txt", solution.plan.values());
  write_trace_csv(dir / "trace.csv", solution.trace);
  nlohmann::ordered_json summary = trace_summary(problem, solution, options);
  if (lp) summary["lp_cost"] = lp->cost;
  write_json(dir / "summary.json", summary);

  out << options.label() << ": " << (solution.converged ? "converged" : "budget exhausted") << " after "
      << solution.epochs << " epochs, gap " << format_double(solution.final_gap) << ", objective "
      << format_double(objective(problem, solution.plan)) << '\n';
  return solution.converged ? kExitOk : kExitBudget;
}

}  // namespace

Action setup_solve(CLI::App& app, std::ostream& out, std::ostream&) {
  auto args = std::make_shared<SolveArgs>();
  auto* gen = app.add_option("--gen", args->gen, "instance generator (random)")->check(CLI::IsMember({"random"}));
  auto* file = app.add_option("--instance", args->instance, "instance file (m n / a / b / C)");
  gen->excludes(file);
  app.add_option("--m", args->m, "rows for --gen")->capture_default_str();
  app.add_option("--n", args->n, "columns for --gen")->capture_default_str();
  app.add_option("--lambda", args->lambda, "relaxation parameter")->required();
  app.add_option("--out", args->out, "output directory")->capture_default_str();
  app.add_flag("--timing", args->timing, "record wall-clock seconds (off: traces are byte-reproducible)");
  app.add_flag("--no-lp", args->no_lp, "skip the LP reference (matrix/value errors become nan)");
  add_solver_flags(app, args->solver);
  return [args, &out] {
    if (args->gen.empty() && args->instance.empty()) args->gen = "random";
    return run_solve(*args, out);
  };
}

}  // namespace srot::cli
