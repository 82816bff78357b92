#include "heatmc/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace heatmc {
namespace {

constexpr double kMaxExponent = 700.0;

// min{1, exp(-x)} without overflow.
double capped_exp_neg(double x) { return x <= 0.0 ? 1.0 : std::exp(-x); }

}  // namespace

void Sensitivities::validate() const {
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0) || !(lambda3 >= 0.0)) {
    throw InputError("sensitivities must be nonnegative");
  }
  if (!(sigma > 0.0)) throw InputError("sigma must be positive");
  if (!ordered() && !allow_unordered) {
    throw InputError("sensitivities must satisfy lambda1 > lambda2 and lambda1 > lambda3 "
                     "(set allow_unordered to override)");
  }
}

double misfit(const BoundaryVector& d, const BoundaryVector& d_sim, double sigma) {
  if (d.size() != d_sim.size()) {
    throw InputError("misfit: data lengths differ (" + std::to_string(d.size()) + " vs " +
                     std::to_string(d_sim.size()) + ")");
  }
  if (!(sigma > 0.0)) throw InputError("misfit: sigma must be positive");
  double sum = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double r = d.values[k] - d_sim.values[k];
    sum += r * r;
  }
  return sum / (sigma * sigma);
}

DiffTerms diff_terms(double misfit_candidate, double misfit_current, const PriorValues& candidate,
                     const PriorValues& current) {
  return {0.5 * (misfit_candidate - misfit_current), candidate.t_value - current.t_value,
          candidate.m_value - current.m_value};
}

DiffTerms diff_terms(const BoundaryVector& d, const BoundaryVector& d_candidate,
                     const BoundaryVector& d_current, const ConductivityField& k_candidate,
                     const ConductivityField& k_current, const Sensitivities& s,
                     const GridSpec& g) {
  if (!k_candidate.same_shape(k_current)) throw InputError("diff_terms: field shapes differ");
  return diff_terms(misfit(d, d_candidate, s.sigma), misfit(d, d_current, s.sigma),
                    prior_values(k_candidate, g.hx(), g.hy()),
                    prior_values(k_current, g.hx(), g.hy()));
}

double alpha_baseline(const DiffTerms& t) { return capped_exp_neg(t.d1); }

double alpha_dual(const DiffTerms& t, const Sensitivities& s) {
  const double smooth = capped_exp_neg(s.lambda1 * t.d1 + s.lambda2 * t.d2);
  const double mixed = capped_exp_neg(s.lambda1 * t.d1 + s.lambda3 * t.d3);
  return std::max(smooth, mixed);
}

double unscaled_alpha(const DiffTerms& t, const std::array<double, 3>& z, const Sensitivities& s) {
  const auto d = t.as_array();
  const auto lam = s.lambdas();
  double expo = 0.0;
  for (std::size_t i = 0; i < 3; ++i) expo -= lam[i] * z[i] * d[i];
  if (std::isnan(expo)) expo = -kMaxExponent;
  return std::exp(std::clamp(expo, -kMaxExponent, kMaxExponent));
}

NormalizedAlpha alpha_normalized(const DiffTerms& t, const NormalizerOutput& z,
                                 const Sensitivities& s, double cutoff) {
  NormalizedAlpha out;
  out.alpha_h = unscaled_alpha(t, z.z, s);
  out.alpha = std::min(cutoff, z.z0 * out.alpha_h);
  return out;
}

}  // namespace heatmc
