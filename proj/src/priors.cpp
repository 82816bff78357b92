#include "heatmc/priors.hpp"

namespace heatmc {
namespace {

// Stencil (lo, hi, span) for the 1-D difference at index t of an axis of
// length len: central inside, forward at 0, backward at len-1.
struct Stencil {
  std::size_t lo;
  std::size_t hi;
  double span;
};

Stencil stencil(std::size_t t, std::size_t len) {
  if (t == 0) return {0, 1, 1.0};
  if (t == len - 1) return {len - 2, len - 1, 1.0};
  return {t - 1, t + 1, 2.0};
}

}  // namespace

DerivativeField mixed_partial(const ConductivityField& k, double hx, double hy) {
  if (k.rows() < 3 || k.cols() < 3) throw InputError("mixed_partial needs a grid of at least 3x3");
  DerivativeField out(k.rows(), k.cols());
  for (std::size_t i = 0; i < k.rows(); ++i) {
    const Stencil sy = stencil(i, k.rows());
    for (std::size_t j = 0; j < k.cols(); ++j) {
      const Stencil sx = stencil(j, k.cols());
      const double cross = k(sy.hi, sx.hi) - k(sy.hi, sx.lo) - k(sy.lo, sx.hi) + k(sy.lo, sx.lo);
      out(i, j) = cross / (sx.span * hx * sy.span * hy);
    }
  }
  return out;
}

double mixed_roughness(const ConductivityField& k, double hx, double hy) {
  return roughness(mixed_partial(k, hx, hy));
}

PriorValues prior_values(const ConductivityField& k, double hx, double hy) {
  return {roughness(k), mixed_roughness(k, hx, hy)};
}

}  // namespace heatmc
