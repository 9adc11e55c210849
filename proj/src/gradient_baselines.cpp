#include <chrono>
#include <cmath>

#include "srot/baselines.hpp"
#include "srot/error.hpp"

namespace srot {

namespace {

using Clock = std::chrono::steady_clock;

Matrix project_columns(const Problem& problem, const Matrix& x) {
  Matrix out(x.rows(), x.cols());
  for (Index i = 0; i < x.cols(); ++i) {
    const double mass = problem.target()[i];
    out.col(i) = mass > 0.0 ? project_scaled_simplex(x.col(i), mass) : Vector::Zero(x.rows());
  }
  return out;
}

Matrix full_gradient(const Problem& problem, const Matrix& x) {
  const Vector shift = (x.rowwise().sum() - problem.source()) / problem.lambda();
  return problem.cost().colwise() + shift;
}

Solution run_gradient_method(const Problem& problem, const GradientOptions& options, bool accelerated,
                             const char* label) {
  if (options.max_iterations < 1) throw ConfigError("gradient method: max_iterations must be >= 1");
  if (!(options.tolerance > 0.0)) throw ConfigError("gradient method: tolerance must be positive");
  if (options.check_period < 1) throw ConfigError("gradient method: check_period must be >= 1");
  const double step = options.stepsize.value_or(problem.lambda() / static_cast<double>(problem.cols()));
  if (!(step > 0.0)) throw ConfigError("gradient method: stepsize must be positive");

  const auto start = Clock::now();
  TransportPlan plan = options.warm_start ? *options.warm_start
                                          : TransportPlan::vertex_init(problem.target(), problem.rows());
  check_dimensions(problem, plan);
  Matrix x = plan.values();
  Matrix y = x;
  double momentum = 1.0;

  SolverTrace trace;
  trace.meta["schema"] = "srot.trace/1";
  trace.meta["label"] = label;
  trace.meta["stepsize"] = std::to_string(step);

  auto record = [&](long epoch) {
    const double wall = options.record_time ? std::chrono::duration<double>(Clock::now() - start).count() : 0.0;
    MetricRecord r = measure(problem, plan, epoch, wall, options.lp_plan);
    if (!std::isfinite(r.objective) || !std::isfinite(r.gap)) {
      throw DivergenceError(std::string(label) + ": non-finite objective at iteration " + std::to_string(epoch),
                            trace);
    }
    trace.append(r);
    return r.gap;
  };

  double gap = record(0);
  long iter = 0;
  while (gap > options.tolerance && iter < options.max_iterations) {
    const Matrix base = accelerated ? y : x;
    const Matrix next = project_columns(problem, base - step * full_gradient(problem, base));
    if (accelerated) {
      const double next_momentum = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
      y = next + ((momentum - 1.0) / next_momentum) * (next - x);
      momentum = next_momentum;
    }
    x = next;
    plan = TransportPlan(x);
    ++iter;
    if (iter % options.check_period == 0 || iter == options.max_iterations) gap = record(iter);
  }
  return Solution{std::move(plan), gap, iter, std::move(trace), gap <= options.tolerance};
}

}  // namespace

Solution pgd_solve(const Problem& problem, const GradientOptions& options) {
  return run_gradient_method(problem, options, false, "PGD");
}

Solution fista_solve(const Problem& problem, const GradientOptions& options) {
  return run_gradient_method(problem, options, true, "FISTA");
}

}  // namespace srot
