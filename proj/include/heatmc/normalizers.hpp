#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "heatmc/acceptance.hpp"

namespace heatmc {

/// none: z = 1. z1: blend with running maxima (global memory, not Markov).
/// z2: blend with the previous iteration. hybrid: z2 with the D memory only
/// refreshed on accepted guesses.
enum class Scheme { none, z1, z2, hybrid };

std::string to_string(Scheme s);
/// Throws InputError naming the valid set.
Scheme parse_scheme(const std::string& name);

struct NormalizerConfig {
  Scheme scheme = Scheme::z2;
  double w0 = 0.1;     ///< weight on the current alpha_h term
  double w = 0.75;     ///< weight on the current |D_i| term
  double cutoff = 1.5;
  double zeta = 0.01;  ///< margin of the restricted draw interval
  double eps = 1e-12;  ///< floor for every denominator
  /// Draw u from [min alpha - zeta, max alpha + zeta]. Unset means on for z1
  /// and off otherwise.
  std::optional<bool> restricted_interval;

  bool restricted() const { return restricted_interval.value_or(scheme == Scheme::z1); }
  void validate() const;
};

/// Per-chain memory. Magnitudes are stored already floored at eps.
struct NormalizerState {
  bool seeded = false;  ///< false until the first evaluated iteration
  double alpha_h_prev = 1.0;
  double alpha_h_max = 1.0;
  std::array<double, 3> d_prev{1.0, 1.0, 1.0};
  std::array<double, 3> d_max{1.0, 1.0, 1.0};
  std::array<double, 3> d_last_accepted{1.0, 1.0, 1.0};
  bool has_alpha_history = false;
  double alpha_history_min = 0.0;
  double alpha_history_max = 0.0;

  friend bool operator==(const NormalizerState&, const NormalizerState&) = default;
};

/// Normalization factors for the current terms. z_i come first, then
/// alpha_h = exp(-sum lambda_i z_i d_i), then z0 from alpha_h. An unseeded
/// state or scheme none gives all ones.
NormalizerOutput z_terms(const NormalizerState& state, const DiffTerms& t, const Sensitivities& s,
                         const NormalizerConfig& cfg);

/// Folds one evaluated iteration into the memory.
NormalizerState update(NormalizerState state, double alpha_h, const DiffTerms& t, bool accepted,
                       double alpha, const NormalizerConfig& cfg);

/// Interval for the accept threshold u: (0, 1) before any alpha was seen,
/// else (min alpha - zeta, max alpha + zeta), widened to (c - eps, c + eps)
/// if it would collapse.
std::pair<double, double> restricted_bounds(const NormalizerState& state,
                                            const NormalizerConfig& cfg);

}  // namespace heatmc
