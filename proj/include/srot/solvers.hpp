#pragma once

// Frank-Wolfe and block-coordinate Frank-Wolfe for the semi-relaxed problem.
//
// Naming used in traces and the CLI:
//   FW-DEC / FW-ELS          full Frank-Wolfe, decay or exact line search
//   BCFW-{U,P,GA}-{DEC,ELS}  block-coordinate, uniform / permutation /
//                            gap-adaptive column sampling
//   BCAFW-ELS, BCPFW-ELS     block-coordinate with away / pairwise steps

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "srot/core.hpp"
#include "srot/error.hpp"
#include "srot/metrics.hpp"
#include "srot/rng.hpp"

namespace srot {

enum class Algorithm { FrankWolfe, BlockCoordinate };
enum class Sampling { Uniform, Permutation, GapAdaptive };
enum class StepRule { Decay, ExactLineSearch };
enum class Variant { Plain, Away, Pairwise };

inline constexpr double kAtomDropThreshold = 1e-12;
inline constexpr double kInitialStoredGap = 1e18;

struct SolverOptions {
  Algorithm algorithm = Algorithm::BlockCoordinate;
  Sampling sampling = Sampling::Uniform;
  StepRule step_rule = StepRule::ExactLineSearch;
  Variant variant = Variant::Plain;
  double epsilon = 1e-6;
  long max_epochs = 1000;
  long gap_check_period = 1;
  long global_refresh_m = 1;
  std::uint64_t rng_seed = 0;

  /// Throws ConfigError on any violated constraint.
  void validate() const;

  /// Short label such as "BCFW-U-ELS" or "BCPFW-ELS".
  std::string label() const;
};

/// Per-column convex weights over the scaled vertices b_i e_j.
class ActiveSet {
 public:
  ActiveSet() = default;

  /// Weights read off the support of each column: alpha_j = T_ji / b_i.
  explicit ActiveSet(const TransportPlan& plan);

  const std::map<Index, double>& column(Index i) const { return weights_[static_cast<std::size_t>(i)]; }
  std::map<Index, double>& column(Index i) { return weights_[static_cast<std::size_t>(i)]; }
  Index cols() const { return static_cast<Index>(weights_.size()); }

  /// b_i * sum_j alpha_j e_j.
  Vector reconstruct(Index i, double mass, Index rows) const;

 private:
  std::vector<std::map<Index, double>> weights_;
};

/// Stored per-column gaps with a prefix-sum table for proportional draws.
class GapSampler {
 public:
  explicit GapSampler(Index cols, double initial = kInitialStoredGap);

  void set(Index i, double gap);
  void set_all(const Vector& gaps);
  double stored(Index i) const { return stored_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& cumulative() const { return cumulative_; }
  long stale_count(Index i) const { return stale_[static_cast<std::size_t>(i)]; }

  /// Probability of drawing column i under the current table.
  double probability(Index i) const;

  struct Draw {
    Index column = 0;
    bool uniform_fallback = false;
  };

  /// i with probability max(g_i, 0) / sum; uniform when every clamped gap is 0.
  Draw draw(Rng& rng);

 private:
  void rebuild();

  std::vector<double> stored_;
  std::vector<double> cumulative_;
  std::vector<long> stale_;
};

double step_decay_fw(long k);
double step_decay_bcfw(long k, Index n);

/// Exact minimizer over [0, gamma_max] of f along t_i + gamma d, or nullopt
/// when d == 0.
std::optional<double> line_search_block(const Problem& problem, const TransportPlan& plan, Index i,
                                        const Vector& direction, double gamma_max);

struct FullLineSearch {
  double gamma = 0.0;
  bool flat = false;  // S 1_n == T 1_n: the quadratic term vanishes
};

/// Exact minimizer over [0,1] of f((1-gamma) T + gamma S).
FullLineSearch line_search_full(const Problem& problem, const TransportPlan& plan, const Matrix& lmo);

/// The active atom of column i with the largest gradient entry.
Atom away_atom(const Problem& problem, const TransportPlan& plan, Index i, const ActiveSet& active);

enum class StepKind { None, FrankWolfe, Away, Pairwise };

struct StepRecord {
  Index column = 0;
  StepKind kind = StepKind::None;
  double gamma = 0.0;
  double gamma_max = 0.0;
  Index entering_row = -1;
  Index leaving_row = -1;
  bool drop = false;
};

/// One block update of column i. `iteration` is the global inner counter k
/// used by the decay rule. `active` is required for away/pairwise variants;
/// when `gaps` is given the stored gap of column i is refreshed afterwards.
StepRecord bcfw_step(const Problem& problem, TransportPlan& plan, Index i, const SolverOptions& options,
                     long iteration, ActiveSet* active, GapSampler* gaps);

/// Inner-iteration notification (after the plan was updated).
struct StepEvent {
  long iteration = 0;
  long epoch = 0;
  const TransportPlan* plan = nullptr;
  StepRecord step;
};

struct SolveContext {
  /// Starting point; the vertex initialization when empty.
  std::optional<TransportPlan> warm_start;
  /// LP plan for matrix/value errors in the trace; NaN columns when null.
  const Matrix* lp_plan = nullptr;
  bool record_time = true;
  std::function<void(const StepEvent&)> on_step;
  /// Called with the completed epoch count and the plan at that point
  /// (epoch 0 is the initial plan).
  std::function<void(long epoch, const TransportPlan&)> on_epoch;
};

struct Solution {
  TransportPlan plan;
  double final_gap = 0.0;
  long epochs = 0;
  SolverTrace trace;
  bool converged = false;
};

/// Raised when the objective becomes non-finite; carries the trace so far.
class DivergenceError : public NumericError {
 public:
  DivergenceError(const std::string& what, SolverTrace trace)
      : NumericError(what), trace_(std::move(trace)) {}
  const SolverTrace& trace() const { return trace_; }

 private:
  SolverTrace trace_;
};

Solution solve(const Problem& problem, const SolverOptions& options, const SolveContext& context = {});

const char* to_string(Algorithm a);
const char* to_string(Sampling s);
const char* to_string(StepRule s);
const char* to_string(Variant v);

}  // namespace srot
