#include "srot/baselines.hpp"
#include "srot/error.hpp"

namespace srot {

ReferenceOptimum reference_optimum(const Problem& problem, const ReferenceOptions& options) {
  if (!(options.tolerance > 0.0)) throw ConfigError("reference_optimum: tolerance must be positive");

  std::optional<TransportPlan> start;
  double gap = 0.0;
  if (options.path != ReferencePath::PairwiseOnly) {
    GradientOptions fista;
    fista.max_iterations = options.fista_iterations;
    fista.tolerance = options.tolerance;
    fista.check_period = 10;
    fista.record_time = false;
    Solution s = fista_solve(problem, fista);
    gap = s.final_gap;
    start = std::move(s.plan);
    if (options.path == ReferencePath::FistaOnly || s.converged) {
      const double f = objective(problem, *start);
      return {f, std::move(*start), gap, gap <= options.tolerance};
    }
  }

  SolverOptions polish;
  polish.algorithm = Algorithm::BlockCoordinate;
  polish.sampling = Sampling::Uniform;
  polish.step_rule = StepRule::ExactLineSearch;
  polish.variant = Variant::Pairwise;
  polish.epsilon = options.tolerance;
  polish.max_epochs = options.pairwise_epochs;
  polish.gap_check_period = 1;
  polish.rng_seed = options.seed;
  SolveContext context;
  context.warm_start = std::move(start);
  context.record_time = false;
  Solution s = solve(problem, polish, context);
  const double f = objective(problem, s.plan);
  return {f, std::move(s.plan), s.final_gap, s.converged};
}

}  // namespace srot
