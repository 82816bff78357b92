#pragma once

#include <cstddef>

#include "heatmc/field.hpp"

namespace heatmc::phantoms {

/// Every cell equal to v (> 0).
ConductivityField constant(double v, std::size_t n, std::size_t m);

/// K(i, j) = base + gx * j/(m-1) + gy * i/(n-1).
ConductivityField tilted_plane(double base, double gx, double gy, std::size_t n, std::size_t m);

/// K(i, j) = base - depth * exp(-((x-cx)^2 + (y-cy)^2) / (2 s^2)) with
/// x = j/(m-1), y = i/(n-1). Requires base - depth > 0 and s > 0.
ConductivityField gaussian_well(double base, double depth, double cx, double cy, double s,
                                std::size_t n, std::size_t m);

}  // namespace heatmc::phantoms
