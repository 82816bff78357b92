#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "heatmc/acceptance.hpp"
#include "heatmc/forward.hpp"
#include "heatmc/normalizers.hpp"
#include "heatmc/priors.hpp"
#include "heatmc/proposal.hpp"
#include "heatmc/rng.hpp"

namespace heatmc {

enum class AcceptanceRule { baseline, dual, normalized };

std::string to_string(AcceptanceRule r);
AcceptanceRule parse_acceptance_rule(const std::string& name);

struct ChainConfig {
  std::uint64_t iterations = 1000;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;  ///< chain index; selects an independent RNG stream
  /// Constant start value or an explicit starting field.
  std::variant<double, ConductivityField> initial_k = 1.0;
  Sensitivities sensitivities;
  ProposalConfig proposal;
  NormalizerConfig normalizer;
  AcceptanceRule acceptance_rule = AcceptanceRule::normalized;
  std::uint64_t record_stride = 1;
  std::uint64_t checkpoint_every = 0;  ///< 0 disables periodic checkpoints

  void validate() const;
};

/// Observed data and, for synthetic experiments, the true field.
struct InverseProblem {
  GridSpec grid;
  BoundaryVector observed;
  std::optional<ConductivityField> truth;
  MisfitDomain domain = MisfitDomain::boundary;
};

struct ChainState {
  ConductivityField k_current;
  BoundaryVector d_current;  ///< always observe(solve_forward(k_current))
  double misfit_current = 0.0;
  PriorValues prior_current;
  NormalizerState normalizer;
  std::uint64_t iteration = 0;
  std::uint64_t accept_count = 0;
  std::uint64_t infeasible_count = 0;
  std::uint64_t solve_failures = 0;
  RandomStream rng;

  friend bool operator==(const ChainState&, const ChainState&) = default;
};

enum class StepStatus { evaluated, infeasible, solve_failed };
std::string to_string(StepStatus s);

struct TraceRecord {
  std::uint64_t iteration = 0;
  double alpha = 0.0;
  double alpha_h = 0.0;
  bool accepted = false;
  DiffTerms terms;
  NormalizerOutput z;
  double u = 0.0;  ///< accept threshold draw (NaN if no draw happened)
  BlockMove move;
  StepStatus status = StepStatus::evaluated;
};

/// One row of the metrics series, emitted every record_stride iterations.
struct MetricRow {
  std::uint64_t iteration = 0;
  double alpha = 0.0;
  bool accepted = false;
  DiffTerms terms;
  double z0 = 1.0;
  double delta = 0.0;
  std::optional<double> beta;
  std::uint64_t gamma = 0;
};

/// Receives the thinned record stream and periodic state snapshots.
class RunSink {
 public:
  virtual ~RunSink() = default;
  virtual void record(const TraceRecord& trace, const MetricRow& metrics) = 0;
  virtual void checkpoint(const ChainState& /*state*/) {}
};

struct RunSummary {
  std::uint64_t iterations = 0;
  std::uint64_t accept_count = 0;
  double acceptance_rate = 0.0;
  double final_delta = 0.0;
  std::optional<double> final_beta;
  std::uint64_t infeasible_count = 0;
  std::uint64_t solve_failures = 0;
  double wall_seconds = 0.0;
};

/// Builds K_0, solves the forward problem once and zeroes the counters.
ChainState init(const ChainConfig& cfg, const InverseProblem& problem);

/// Metropolis-Hastings driver for one chain.
class Chain {
 public:
  Chain(ChainConfig cfg, InverseProblem problem);
  /// Continue from a saved state (checkpoint restore).
  Chain(ChainConfig cfg, InverseProblem problem, ChainState state);

  /// Propose, evaluate, accept or reject, update memory.
  TraceRecord step();

  /// Steps until state().iteration reaches cfg.iterations.
  RunSummary run(RunSink& sink);

  const ChainState& state() const { return state_; }
  const ChainConfig& config() const { return cfg_; }
  const InverseProblem& problem() const { return problem_; }

  MetricRow metrics_for(const TraceRecord& rec) const;

 private:
  ChainConfig cfg_;
  InverseProblem problem_;
  ForwardSolver solver_;
  ChainState state_;
};

}  // namespace heatmc
