#pragma once

#include <array>

#include "heatmc/field.hpp"
#include "heatmc/grid.hpp"
#include "heatmc/priors.hpp"

namespace heatmc {

/// Candidate-minus-current differences entering the acceptance exponent.
struct DiffTerms {
  double d1 = 0.0;  ///< half the change in sigma-weighted data misfit
  double d2 = 0.0;  ///< roughness(K') - roughness(K_n)
  double d3 = 0.0;  ///< mixed_roughness(K') - mixed_roughness(K_n)

  std::array<double, 3> as_array() const { return {d1, d2, d3}; }
  friend bool operator==(const DiffTerms&, const DiffTerms&) = default;
};

struct Sensitivities {
  double lambda1 = 0.5;
  double lambda2 = 0.15;
  double lambda3 = 0.45;
  double sigma = 0.1;
  /// Accept lambda1 <= lambda2 or lambda1 <= lambda3 (warns instead of failing).
  bool allow_unordered = false;

  bool ordered() const { return lambda1 > lambda2 && lambda1 > lambda3; }
  std::array<double, 3> lambdas() const { return {lambda1, lambda2, lambda3}; }
  void validate() const;
};

/// Normalization factors (z0; z1, z2, z3) for the combined exponent.
struct NormalizerOutput {
  double z0 = 1.0;
  std::array<double, 3> z{1.0, 1.0, 1.0};
};

/// (1 / sigma^2) * sum_k (d_k - d_sim_k)^2
double misfit(const BoundaryVector& d, const BoundaryVector& d_sim, double sigma);

/// D-terms from cached misfits and prior values.
DiffTerms diff_terms(double misfit_candidate, double misfit_current, const PriorValues& candidate,
                     const PriorValues& current);

/// D-terms computed from scratch.
DiffTerms diff_terms(const BoundaryVector& d, const BoundaryVector& d_candidate,
                     const BoundaryVector& d_current, const ConductivityField& k_candidate,
                     const ConductivityField& k_current, const Sensitivities& s,
                     const GridSpec& g);

/// min{1, exp(-d1)}
double alpha_baseline(const DiffTerms& t);

/// max(min{1, exp(-l1 d1 - l2 d2)}, min{1, exp(-l1 d1 - l3 d3)})
double alpha_dual(const DiffTerms& t, const Sensitivities& s);

/// exp(-sum_i lambda_i z_i d_i). The exponent is clamped to +-700 so the
/// result stays finite and nonzero.
double unscaled_alpha(const DiffTerms& t, const std::array<double, 3>& z, const Sensitivities& s);

struct NormalizedAlpha {
  double alpha = 0.0;    ///< min{cutoff, z0 * alpha_h}
  double alpha_h = 0.0;  ///< exp(-sum lambda_i z_i d_i)
};

NormalizedAlpha alpha_normalized(const DiffTerms& t, const NormalizerOutput& z,
                                 const Sensitivities& s, double cutoff);

}  // namespace heatmc
