#include "heatmc/normalizers.hpp"

#include <algorithm>
#include <cmath>

namespace heatmc {

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::none: return "none";
    case Scheme::z1: return "z1";
    case Scheme::z2: return "z2";
    case Scheme::hybrid: return "hybrid";
  }
  return "?";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "none") return Scheme::none;
  if (name == "z1") return Scheme::z1;
  if (name == "z2") return Scheme::z2;
  if (name == "hybrid") return Scheme::hybrid;
  throw InputError("unknown normalization scheme \"" + name +
                   "\" (valid: none, z1, z2, hybrid)");
}

void NormalizerConfig::validate() const {
  if (!(w0 >= 0.0 && w0 <= 1.0)) throw InputError("normalizer.w0 must lie in [0, 1]");
  if (!(w >= 0.0 && w <= 1.0)) throw InputError("normalizer.w must lie in [0, 1]");
  if (!(cutoff > 0.0)) throw InputError("normalizer.cutoff must be positive");
  if (!(zeta >= 0.0)) throw InputError("normalizer.zeta must be >= 0");
  if (!(eps > 0.0)) throw InputError("normalizer.eps must be positive");
}

NormalizerOutput z_terms(const NormalizerState& state, const DiffTerms& t, const Sensitivities& s,
                         const NormalizerConfig& cfg) {
  NormalizerOutput out;
  if (cfg.scheme == Scheme::none || !state.seeded) return out;

  const auto d = t.as_array();
  const double eps = cfg.eps;
  for (std::size_t i = 0; i < 3; ++i) {
    const double current = std::max(std::abs(d[i]), eps);
    double memory = 1.0;
    switch (cfg.scheme) {
      case Scheme::z1: memory = std::max(state.d_max[i], current); break;
      case Scheme::z2: memory = state.d_prev[i]; break;
      case Scheme::hybrid: memory = state.d_last_accepted[i]; break;
      case Scheme::none: break;
    }
    out.z[i] = cfg.w / current + (1.0 - cfg.w) / memory;
  }

  const double alpha_h = unscaled_alpha(t, out.z, s);
  const double alpha_memory =
      cfg.scheme == Scheme::z1 ? std::max(state.alpha_h_max, alpha_h) : state.alpha_h_prev;
  out.z0 = cfg.w0 / std::max(alpha_h, eps) + (1.0 - cfg.w0) / std::max(alpha_memory, eps);
  return out;
}

NormalizerState update(NormalizerState state, double alpha_h, const DiffTerms& t, bool accepted,
                       double alpha, const NormalizerConfig& cfg) {
  const auto d = t.as_array();
  const bool first = !state.seeded;
  for (std::size_t i = 0; i < 3; ++i) {
    const double mag = std::max(std::abs(d[i]), cfg.eps);
    state.d_prev[i] = mag;
    state.d_max[i] = first ? mag : std::max(state.d_max[i], mag);
    if (accepted || first) state.d_last_accepted[i] = mag;
  }
  state.alpha_h_prev = alpha_h;
  state.alpha_h_max = first ? alpha_h : std::max(state.alpha_h_max, alpha_h);
  state.seeded = true;

  if (!state.has_alpha_history) {
    state.alpha_history_min = state.alpha_history_max = alpha;
    state.has_alpha_history = true;
  } else {
    state.alpha_history_min = std::min(state.alpha_history_min, alpha);
    state.alpha_history_max = std::max(state.alpha_history_max, alpha);
  }
  return state;
}

std::pair<double, double> restricted_bounds(const NormalizerState& state,
                                            const NormalizerConfig& cfg) {
  if (!state.has_alpha_history) return {0.0, 1.0};
  const double lo = state.alpha_history_min - cfg.zeta;
  const double hi = state.alpha_history_max + cfg.zeta;
  if (lo < hi) return {lo, hi};
  const double c = 0.5 * (state.alpha_history_min + state.alpha_history_max);
  return {c - cfg.eps, c + cfg.eps};
}

}  // namespace heatmc
