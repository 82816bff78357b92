#pragma once

#include "heatmc/field.hpp"

namespace heatmc {

/// Roughness of the current and candidate states, cached by the chain.
struct PriorValues {
  double t_value = 0.0;  ///< sum of squared neighbour differences of K
  double m_value = 0.0;  ///< same functional applied to K_xy

  friend bool operator==(const PriorValues&, const PriorValues&) = default;
};

/// Sum of squared differences over vertically and horizontally adjacent
/// cells, in index space (no mesh-spacing factors).
template <class Tag>
double roughness(const Field<Tag>& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < f.rows(); ++i) {
    for (std::size_t j = 0; j < f.cols(); ++j) {
      if (i > 0) {
        const double dv = f(i, j) - f(i - 1, j);
        sum += dv * dv;
      }
      if (j > 0) {
        const double dh = f(i, j) - f(i, j - 1);
        sum += dh * dh;
      }
    }
  }
  return sum;
}

/// Cross derivative K_xy as the product of 1-D difference operators: central
/// differences inside, first-order forward/backward differences on the edges.
/// Exact for bilinear fields. Requires at least 3x3.
DerivativeField mixed_partial(const ConductivityField& k, double hx, double hy);

/// roughness(mixed_partial(k, hx, hy))
double mixed_roughness(const ConductivityField& k, double hx, double hy);

PriorValues prior_values(const ConductivityField& k, double hx, double hy);

}  // namespace heatmc
