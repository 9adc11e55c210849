#include "srot/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

namespace srot {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// (1 - gamma) t + gamma * mass * e_row. Shared by FW and BCFW so that both
// perform bit-identical arithmetic on a column.
Vector blend_toward_vertex(const Eigen::Ref<const Vector>& column, double gamma, Index row, double mass) {
  Vector next = (1.0 - gamma) * column;
  next[row] += gamma * mass;
  return next;
}

Vector block_gradient(const Problem& problem, const Vector& residual, Index i) {
  return problem.cost().col(i) + residual / problem.lambda();
}

// Removes weights below the drop threshold and rescales the rest to sum 1.
bool prune_and_normalize(std::map<Index, double>& weights) {
  bool dropped = false;
  for (auto it = weights.begin(); it != weights.end();) {
    if (it->second < kAtomDropThreshold) {
      it = weights.erase(it);
      dropped = true;
    } else {
      ++it;
    }
  }
  if (weights.empty()) throw InternalError("active set emptied by a step");
  double total = 0.0;
  for (const auto& [row, w] : weights) total += w;
  for (auto& [row, w] : weights) w /= total;
  return dropped;
}

}  // namespace

const char* to_string(Algorithm a) { return a == Algorithm::FrankWolfe ? "fw" : "bcfw"; }

const char* to_string(Sampling s) {
  switch (s) {
    case Sampling::Uniform: return "uniform";
    case Sampling::Permutation: return "permutation";
    case Sampling::GapAdaptive: return "gap";
  }
  return "?";
}

const char* to_string(StepRule s) { return s == StepRule::Decay ? "dec" : "els"; }

const char* to_string(Variant v) {
  switch (v) {
    case Variant::Plain: return "plain";
    case Variant::Away: return "away";
    case Variant::Pairwise: return "pairwise";
  }
  return "?";
}

void SolverOptions::validate() const {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (max_epochs < 1) throw ConfigError("max_epochs must be at least 1");
  if (gap_check_period < 1) throw ConfigError("gap_check_period must be at least 1");
  if (global_refresh_m < 1) throw ConfigError("global_refresh_m must be at least 1");
  if (variant != Variant::Plain) {
    if (algorithm != Algorithm::BlockCoordinate) {
      throw ConfigError("away and pairwise steps require the block-coordinate algorithm");
    }
    if (step_rule != StepRule::ExactLineSearch) {
      throw ConfigError("away and pairwise steps require exact line search");
    }
  }
}

std::string SolverOptions::label() const {
  const std::string step = step_rule == StepRule::Decay ? "DEC" : "ELS";
  if (algorithm == Algorithm::FrankWolfe) return "FW-" + step;
  if (variant == Variant::Away) return "BCAFW-" + step;
  if (variant == Variant::Pairwise) return "BCPFW-" + step;
  const char* sampler = sampling == Sampling::Uniform ? "U" : sampling == Sampling::Permutation ? "P" : "GA";
  return std::string("BCFW-") + sampler + "-" + step;
}

// ---------------------------------------------------------------------------

ActiveSet::ActiveSet(const TransportPlan& plan) : weights_(static_cast<std::size_t>(plan.cols())) {
  for (Index i = 0; i < plan.cols(); ++i) {
    const double mass = plan.column(i).sum();
    if (mass <= 0.0) continue;
    auto& w = column(i);
    for (Index j = 0; j < plan.rows(); ++j) {
      if (plan.values()(j, i) > 0.0) w[j] = plan.values()(j, i) / mass;
    }
  }
}

Vector ActiveSet::reconstruct(Index i, double mass, Index rows) const {
  Vector out = Vector::Zero(rows);
  for (const auto& [row, w] : column(i)) out[row] = mass * w;
  return out;
}

// ---------------------------------------------------------------------------

GapSampler::GapSampler(Index cols, double initial)
    : stored_(static_cast<std::size_t>(cols), initial),
      cumulative_(static_cast<std::size_t>(cols), 0.0),
      stale_(static_cast<std::size_t>(cols), 0) {
  if (cols < 1) throw ConfigError("GapSampler: need at least one column");
  rebuild();
}

void GapSampler::set(Index i, double gap) {
  if (i < 0 || i >= static_cast<Index>(stored_.size())) throw ConfigError("GapSampler: index out of range");
  for (auto& s : stale_) ++s;
  stale_[static_cast<std::size_t>(i)] = 0;
  stored_[static_cast<std::size_t>(i)] = gap;
  rebuild();
}

void GapSampler::set_all(const Vector& gaps) {
  if (gaps.size() != static_cast<Index>(stored_.size())) throw ConfigError("GapSampler: size mismatch");
  for (std::size_t k = 0; k < stored_.size(); ++k) {
    stored_[k] = gaps[static_cast<Index>(k)];
    stale_[k] = 0;
  }
  rebuild();
}

void GapSampler::rebuild() {
  double running = 0.0;
  for (std::size_t k = 0; k < stored_.size(); ++k) {
    running += std::max(stored_[k], 0.0);
    cumulative_[k] = running;
  }
}

double GapSampler::probability(Index i) const {
  const double total = cumulative_.back();
  if (total <= 0.0) return 1.0 / static_cast<double>(stored_.size());
  return std::max(stored_[static_cast<std::size_t>(i)], 0.0) / total;
}

GapSampler::Draw GapSampler::draw(Rng& rng) {
  const double total = cumulative_.back();
  if (!(total > 0.0) || !std::isfinite(total)) {
    return {static_cast<Index>(rng.index(stored_.size())), true};
  }
  const double target = rng.uniform() * total;
  // First entry whose prefix sum exceeds the target; zero-weight entries are
  // never chosen because their prefix equals the previous one.
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  if (it == cumulative_.end()) --it;
  return {static_cast<Index>(it - cumulative_.begin()), false};
}

// ---------------------------------------------------------------------------

double step_decay_fw(long k) { return 2.0 / (static_cast<double>(k) + 2.0); }

double step_decay_bcfw(long k, Index n) {
  const double twice_n = 2.0 * static_cast<double>(n);
  return twice_n / (static_cast<double>(k) + twice_n);
}

std::optional<double> line_search_block(const Problem& problem, const TransportPlan& plan, Index i,
                                        const Vector& direction, double gamma_max) {
  if (i < 0 || i >= problem.cols()) throw ConfigError("line_search_block: column index out of range");
  if (direction.size() != problem.rows()) throw ConfigError("line_search_block: direction length mismatch");
  const double curvature = direction.squaredNorm();
  if (curvature == 0.0) return std::nullopt;
  const Vector residual = row_residual(problem, plan);
  const double slope = problem.lambda() * direction.dot(problem.cost().col(i)) + direction.dot(residual);
  const double gamma = -slope / curvature;
  return std::clamp(gamma, 0.0, gamma_max);
}

FullLineSearch line_search_full(const Problem& problem, const TransportPlan& plan, const Matrix& lmo) {
  check_dimensions(problem, plan);
  const Vector row_delta = plan.row_sums() - lmo.rowwise().sum();
  const double curvature = row_delta.squaredNorm();
  if (curvature == 0.0) return {0.0, true};
  const Vector residual = row_residual(problem, plan);
  const double numerator =
      problem.lambda() * (plan.values() - lmo).cwiseProduct(problem.cost()).sum() + row_delta.dot(residual);
  return {std::clamp(numerator / curvature, 0.0, 1.0), false};
}

Atom away_atom(const Problem& problem, const TransportPlan& plan, Index i, const ActiveSet& active) {
  if (i < 0 || i >= active.cols()) throw ConfigError("away_atom: column index out of range");
  const auto& weights = active.column(i);
  if (weights.empty()) throw InternalError("away_atom: empty active set");
  const Vector grad = gradient_column(problem, plan, i);
  Index best = weights.begin()->first;
  for (const auto& [row, w] : weights) {
    // std::map iterates rows in increasing order, so strict > keeps the
    // smallest index among ties.
    if (grad[row] > grad[best]) best = row;
  }
  return Atom{i, best, problem.target()[i]};
}

StepRecord bcfw_step(const Problem& problem, TransportPlan& plan, Index i, const SolverOptions& options,
                     long iteration, ActiveSet* active, GapSampler* gaps) {
  if (i < 0 || i >= problem.cols()) throw ConfigError("bcfw_step: column index out of range");
  StepRecord rec;
  rec.column = i;
  const double mass = problem.target()[i];
  const Index m = problem.rows();
  if (mass > 0.0) {
    const Vector residual = row_residual(problem, plan);
    const Vector grad = block_gradient(problem, residual, i);
    const Atom s = lmo_column(grad, mass, i);
    rec.entering_row = s.row;

    if (options.variant == Variant::Plain) {
      Vector d = -plan.column(i);
      d[s.row] += mass;
      std::optional<double> gamma;
      if (options.step_rule == StepRule::Decay) {
        gamma = step_decay_bcfw(iteration, problem.cols());
      } else {
        gamma = line_search_block(problem, plan, i, d, 1.0);
      }
      if (gamma) {
        rec.kind = StepKind::FrankWolfe;
        rec.gamma = *gamma;
        rec.gamma_max = 1.0;
        plan.update_column(i, blend_toward_vertex(plan.column(i), *gamma, s.row, mass));
        if (active != nullptr && active->cols() == problem.cols()) {
          auto& w = active->column(i);
          for (auto& [row, a] : w) a *= (1.0 - *gamma);
          w[s.row] += *gamma;
          prune_and_normalize(w);
        }
      }
    } else {
      if (active == nullptr) throw ConfigError("bcfw_step: away/pairwise variants need an active set");
      auto& w = active->column(i);
      const Atom v = away_atom(problem, plan, i, *active);
      const double alpha_v = w.at(v.row);
      rec.leaving_row = v.row;

      Vector d_fw = -plan.column(i);
      d_fw[s.row] += mass;

      if (options.variant == Variant::Away) {
        Vector d_away = plan.column(i);
        d_away[v.row] -= mass;
        const bool singleton = w.size() == 1;
        const bool use_fw = singleton || (-grad.dot(d_fw) >= -grad.dot(d_away));
        if (use_fw) {
          rec.gamma_max = 1.0;
          if (auto gamma = line_search_block(problem, plan, i, d_fw, 1.0)) {
            rec.kind = StepKind::FrankWolfe;
            rec.gamma = *gamma;
            for (auto& [row, a] : w) a *= (1.0 - *gamma);
            w[s.row] += *gamma;
          }
        } else {
          rec.gamma_max = alpha_v / (1.0 - alpha_v);
          if (auto gamma = line_search_block(problem, plan, i, d_away, rec.gamma_max)) {
            rec.kind = StepKind::Away;
            rec.gamma = *gamma;
            for (auto& [row, a] : w) a *= (1.0 + *gamma);
            if (*gamma >= rec.gamma_max) {
              w[v.row] = 0.0;
              rec.drop = true;
            } else {
              w[v.row] -= *gamma;
            }
          }
        }
      } else {
        rec.gamma_max = alpha_v;
        if (s.row != v.row) {
          Vector d = Vector::Zero(m);
          d[s.row] = mass;
          d[v.row] = -mass;
          if (auto gamma = line_search_block(problem, plan, i, d, alpha_v)) {
            rec.kind = StepKind::Pairwise;
            rec.gamma = *gamma;
            w[s.row] += *gamma;
            if (*gamma >= alpha_v) {
              w[v.row] = 0.0;
              rec.drop = true;
            } else {
              w[v.row] -= *gamma;
            }
          }
        }
      }
      if (rec.kind != StepKind::None) {
        rec.drop = prune_and_normalize(w) || rec.drop;
        plan.update_column(i, active->reconstruct(i, mass, m));
      }
    }
  }
  if (gaps != nullptr) gaps->set(i, column_gap(problem, plan, i));
  return rec;
}

// ---------------------------------------------------------------------------

namespace {

class Runner {
 public:
  Runner(const Problem& problem, const SolverOptions& options, const SolveContext& context)
      : problem_(problem),
        options_(options),
        context_(context),
        plan_(context.warm_start ? *context.warm_start : TransportPlan::vertex_init(problem.target(), problem.rows())),
        rng_(options.rng_seed),
        start_(Clock::now()) {
    check_dimensions(problem_, plan_);
    for (Index i = 0; i < problem_.cols(); ++i) {
      if (std::abs(plan_.column_mass(i) - problem_.target()[i]) > kColumnMassTolerance) {
        throw ConstraintError("solve: warm start violates the column marginals");
      }
    }
    if (options_.variant != Variant::Plain) active_ = ActiveSet(plan_);
    if (options_.sampling == Sampling::GapAdaptive && options_.algorithm == Algorithm::BlockCoordinate) {
      gaps_.emplace(problem_.cols());
    }
    order_.resize(static_cast<std::size_t>(problem_.cols()));

    auto& meta = trace_.meta;
    meta["schema"] = "srot.trace/1";
    meta["label"] = options_.label();
    meta["algorithm"] = to_string(options_.algorithm);
    meta["sampling"] = to_string(options_.sampling);
    meta["step_rule"] = to_string(options_.step_rule);
    meta["variant"] = to_string(options_.variant);
    meta["epsilon"] = std::to_string(options_.epsilon);
    meta["max_epochs"] = std::to_string(options_.max_epochs);
    meta["gap_check_period"] = std::to_string(options_.gap_check_period);
    meta["global_refresh_m"] = std::to_string(options_.global_refresh_m);
    meta["seed"] = std::to_string(options_.rng_seed);
    std::ostringstream digest;
    digest << std::hex << problem_.digest();
    meta["instance_digest"] = digest.str();
  }

  Solution run() {
    double gap = record(0);
    if (context_.on_epoch) context_.on_epoch(0, plan_);
    bool converged = gap <= options_.epsilon;
    const long period = options_.algorithm == Algorithm::FrankWolfe ? 1 : options_.gap_check_period;
    long epoch = 0;
    while (!converged && epoch < options_.max_epochs) {
      if (options_.algorithm == Algorithm::FrankWolfe) {
        frank_wolfe_iteration(epoch);
      } else {
        block_epoch(epoch);
      }
      ++epoch;
      if (context_.on_epoch) context_.on_epoch(epoch, plan_);
      if (epoch % period == 0 || epoch == options_.max_epochs) {
        gap = record(epoch);
        converged = gap <= options_.epsilon;
      }
    }
    if (context_.record_time) trace_.meta["gap_eval_seconds"] = std::to_string(gap_seconds_);
    trace_.meta["uniform_fallbacks"] = std::to_string(uniform_fallbacks_);
    trace_.meta["inner_iterations"] = std::to_string(iteration_);
    if (first_refresh_ >= 0) trace_.meta["first_global_refresh_iteration"] = std::to_string(first_refresh_);
    return Solution{plan_, gap, epoch, std::move(trace_), converged};
  }

 private:
  double record(long epoch) {
    const auto t0 = Clock::now();
    const double wall = context_.record_time ? seconds_since(start_) : 0.0;
    MetricRecord r = measure(problem_, plan_, epoch, wall, context_.lp_plan);
    gap_seconds_ += seconds_since(t0);
    if (!std::isfinite(r.objective) || !std::isfinite(r.gap)) {
      throw DivergenceError("solve: non-finite objective at epoch " + std::to_string(epoch), trace_);
    }
    trace_.append(r);
    return r.gap;
  }

  void frank_wolfe_iteration(long k) {
    const Index n = problem_.cols();
    const Vector residual = row_residual(problem_, plan_);
    Matrix lmo = Matrix::Zero(problem_.rows(), n);
    std::vector<Index> rows(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
      const Atom s = lmo_column(block_gradient(problem_, residual, i), problem_.target()[i], i);
      rows[static_cast<std::size_t>(i)] = s.row;
      lmo(s.row, i) = s.value;
    }
    double gamma = 0.0;
    if (options_.step_rule == StepRule::Decay) {
      gamma = step_decay_fw(k);
    } else {
      const FullLineSearch ls = line_search_full(problem_, plan_, lmo);
      gamma = ls.gamma;
      if (ls.flat) {
        // Row sums do not move, so f is linear along the segment.
        gamma = (plan_.values() - lmo).cwiseProduct(problem_.cost()).sum() > 0.0 ? 1.0 : 0.0;
      }
    }
    for (Index i = 0; i < n; ++i) {
      plan_.update_column(i, blend_toward_vertex(plan_.column(i), gamma, rows[static_cast<std::size_t>(i)],
                                                 problem_.target()[i]));
    }
    StepRecord rec;
    rec.column = -1;
    rec.kind = StepKind::FrankWolfe;
    rec.gamma = gamma;
    rec.gamma_max = 1.0;
    notify(rec, k);
    ++iteration_;
  }

  void block_epoch(long epoch) {
    const Index n = problem_.cols();
    if (options_.sampling == Sampling::Permutation) {
      std::iota(order_.begin(), order_.end(), std::size_t{0});
      rng_.shuffle(order_);
    }
    const long refresh_period = options_.global_refresh_m * static_cast<long>(n);
    for (Index inner = 0; inner < n; ++inner) {
      Index i = 0;
      switch (options_.sampling) {
        case Sampling::Uniform: i = static_cast<Index>(rng_.index(static_cast<std::size_t>(n))); break;
        case Sampling::Permutation: i = static_cast<Index>(order_[static_cast<std::size_t>(inner)]); break;
        case Sampling::GapAdaptive: {
          const auto draw = gaps_->draw(rng_);
          if (draw.uniform_fallback) ++uniform_fallbacks_;
          i = draw.column;
          break;
        }
      }
      ActiveSet* active = options_.variant == Variant::Plain ? nullptr : &active_;
      const StepRecord rec =
          bcfw_step(problem_, plan_, i, options_, iteration_, active, gaps_ ? &*gaps_ : nullptr);
      notify(rec, epoch);
      ++iteration_;
      if (gaps_ && iteration_ % refresh_period == 0) {
        gaps_->set_all(duality_gap(problem_, plan_).per_column);
        if (first_refresh_ < 0) first_refresh_ = iteration_;
      }
    }
  }

  void notify(const StepRecord& rec, long epoch) {
    if (!context_.on_step) return;
    StepEvent ev;
    ev.iteration = iteration_;
    ev.epoch = epoch;
    ev.plan = &plan_;
    ev.step = rec;
    context_.on_step(ev);
  }

  const Problem& problem_;
  const SolverOptions& options_;
  const SolveContext& context_;
  TransportPlan plan_;
  Rng rng_;
  ActiveSet active_;
  std::optional<GapSampler> gaps_;
  std::vector<std::size_t> order_;
  SolverTrace trace_;
  Clock::time_point start_;
  double gap_seconds_ = 0.0;
  long iteration_ = 0;
  long uniform_fallbacks_ = 0;
  long first_refresh_ = -1;
};

}  // namespace

Solution solve(const Problem& problem, const SolverOptions& options, const SolveContext& context) {
  options.validate();
  Runner runner(problem, options, context);
  return runner.run();
}

}  // namespace srot
