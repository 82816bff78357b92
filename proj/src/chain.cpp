#include "heatmc/chain.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "heatmc/metrics.hpp"

namespace heatmc {

std::string to_string(AcceptanceRule r) {
  switch (r) {
    case AcceptanceRule::baseline: return "baseline";
    case AcceptanceRule::dual: return "dual";
    case AcceptanceRule::normalized: return "normalized";
  }
  return "?";
}

AcceptanceRule parse_acceptance_rule(const std::string& name) {
  if (name == "baseline") return AcceptanceRule::baseline;
  if (name == "dual") return AcceptanceRule::dual;
  if (name == "normalized") return AcceptanceRule::normalized;
  throw InputError("unknown acceptance rule \"" + name + "\" (valid: baseline, dual, normalized)");
}

std::string to_string(StepStatus s) {
  switch (s) {
    case StepStatus::evaluated: return "evaluated";
    case StepStatus::infeasible: return "infeasible";
    case StepStatus::solve_failed: return "solve_failed";
  }
  return "?";
}

void ChainConfig::validate() const {
  if (iterations < 1) throw InputError("chain.iterations must be >= 1");
  if (record_stride < 1) throw InputError("chain.record_stride must be >= 1");
  sensitivities.validate();
  proposal.validate();
  normalizer.validate();
  if (const auto* v = std::get_if<double>(&initial_k); v && !(*v > proposal.k_min)) {
    throw InputError("chain.initial_k must exceed the positivity floor");
  }
}

ChainState init(const ChainConfig& cfg, const InverseProblem& problem) {
  cfg.validate();
  problem.grid.validate();
  const GridSpec& g = problem.grid;

  ChainState s;
  if (const auto* v = std::get_if<double>(&cfg.initial_k)) {
    s.k_current = ConductivityField(g.n, g.m, *v);
  } else {
    s.k_current = std::get<ConductivityField>(cfg.initial_k);
  }
  require_shape(s.k_current, g);
  require_positive(s.k_current, cfg.proposal.k_min);

  s.d_current = observe(solve_forward(s.k_current, g), problem.domain);
  if (s.d_current.size() != problem.observed.size()) {
    throw InputError("observed data has " + std::to_string(problem.observed.size()) +
                     " values but the grid produces " + std::to_string(s.d_current.size()));
  }
  if (problem.truth) require_shape(*problem.truth, g);
  s.misfit_current = misfit(problem.observed, s.d_current, cfg.sensitivities.sigma);
  s.prior_current = prior_values(s.k_current, g.hx(), g.hy());
  s.rng = RandomStream(cfg.seed, cfg.stream);
  return s;
}

Chain::Chain(ChainConfig cfg, InverseProblem problem)
    : cfg_(std::move(cfg)), problem_(std::move(problem)), solver_(problem_.grid),
      state_(init(cfg_, problem_)) {}

Chain::Chain(ChainConfig cfg, InverseProblem problem, ChainState state)
    : cfg_(std::move(cfg)), problem_(std::move(problem)), solver_(problem_.grid),
      state_(std::move(state)) {
  cfg_.validate();
  require_shape(state_.k_current, problem_.grid);
  if (state_.d_current.size() != problem_.observed.size()) {
    throw InputError("restored state does not match the observed data length");
  }
}

TraceRecord Chain::step() {
  ChainState& s = state_;
  const GridSpec& g = problem_.grid;
  TraceRecord rec;
  rec.iteration = ++s.iteration;
  rec.u = std::numeric_limits<double>::quiet_NaN();

  Proposal prop = propose(s.k_current, s.rng, cfg_.proposal);
  rec.move = prop.move;
  if (!prop.feasible) {
    rec.status = StepStatus::infeasible;
    ++s.infeasible_count;
    return rec;
  }

  BoundaryVector d_candidate;
  try {
    d_candidate = observe(solver_.solve(prop.candidate), problem_.domain);
  } catch (const SolveError&) {
    rec.status = StepStatus::solve_failed;
    ++s.solve_failures;
    return rec;
  }

  const double misfit_candidate =
      misfit(problem_.observed, d_candidate, cfg_.sensitivities.sigma);
  const PriorValues prior_candidate = prior_values(prop.candidate, g.hx(), g.hy());
  rec.terms = diff_terms(misfit_candidate, s.misfit_current, prior_candidate, s.prior_current);

  switch (cfg_.acceptance_rule) {
    case AcceptanceRule::baseline:
      rec.alpha = alpha_baseline(rec.terms);
      rec.alpha_h = unscaled_alpha(rec.terms, rec.z.z, cfg_.sensitivities);
      break;
    case AcceptanceRule::dual:
      rec.alpha = alpha_dual(rec.terms, cfg_.sensitivities);
      rec.alpha_h = unscaled_alpha(rec.terms, rec.z.z, cfg_.sensitivities);
      break;
    case AcceptanceRule::normalized: {
      rec.z = z_terms(s.normalizer, rec.terms, cfg_.sensitivities, cfg_.normalizer);
      const NormalizedAlpha na =
          alpha_normalized(rec.terms, rec.z, cfg_.sensitivities, cfg_.normalizer.cutoff);
      rec.alpha = na.alpha;
      rec.alpha_h = na.alpha_h;
      break;
    }
  }

  const auto [lo, hi] = cfg_.normalizer.restricted()
                            ? restricted_bounds(s.normalizer, cfg_.normalizer)
                            : std::pair{0.0, 1.0};
  rec.u = s.rng.uniform(lo, hi);
  rec.accepted = rec.alpha > rec.u;

  if (rec.accepted) {
    s.k_current = std::move(prop.candidate);
    s.d_current = std::move(d_candidate);
    s.misfit_current = misfit_candidate;
    s.prior_current = prior_candidate;
    ++s.accept_count;
  }
  s.normalizer =
      update(s.normalizer, rec.alpha_h, rec.terms, rec.accepted, rec.alpha, cfg_.normalizer);
  return rec;
}

MetricRow Chain::metrics_for(const TraceRecord& rec) const {
  MetricRow row;
  row.iteration = rec.iteration;
  row.alpha = rec.alpha;
  row.accepted = rec.accepted;
  row.terms = rec.terms;
  row.z0 = rec.z.z0;
  row.delta = delta_at(problem_.observed, state_.d_current);
  if (problem_.truth) row.beta = beta_at(*problem_.truth, state_.k_current);
  row.gamma = state_.accept_count;
  return row;
}

RunSummary Chain::run(RunSink& sink) {
  const auto start = std::chrono::steady_clock::now();
  while (state_.iteration < cfg_.iterations) {
    const TraceRecord rec = step();
    if (rec.iteration % cfg_.record_stride == 0 || rec.iteration == cfg_.iterations) {
      sink.record(rec, metrics_for(rec));
    }
    if (cfg_.checkpoint_every > 0 &&
        (rec.iteration % cfg_.checkpoint_every == 0 || rec.iteration == cfg_.iterations)) {
      sink.checkpoint(state_);
    }
  }

  RunSummary summary;
  summary.iterations = state_.iteration;
  summary.accept_count = state_.accept_count;
  summary.acceptance_rate = state_.iteration == 0 ? 0.0
                                                  : static_cast<double>(state_.accept_count) /
                                                        static_cast<double>(state_.iteration);
  summary.final_delta = delta_at(problem_.observed, state_.d_current);
  if (problem_.truth) summary.final_beta = beta_at(*problem_.truth, state_.k_current);
  summary.infeasible_count = state_.infeasible_count;
  summary.solve_failures = state_.solve_failures;
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

}  // namespace heatmc
