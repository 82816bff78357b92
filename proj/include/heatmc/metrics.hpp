#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "heatmc/field.hpp"

namespace heatmc {

/// sum_k (d_k - d_state_k)^2, unweighted.
double delta_at(const BoundaryVector& d, const BoundaryVector& d_state);

/// sum over cells of (k_correct - k_n)^2.
double beta_at(const ConductivityField& k_correct, const ConductivityField& k_n);

/// Least-squares slope of gamma[i] against i. Needs at least two points.
double gamma_slope(std::span<const std::uint64_t> gamma);

/// Least-squares slope of gamma against explicit iteration numbers, for
/// series thinned by a record stride.
double gamma_slope(std::span<const double> iteration, std::span<const double> gamma);

/// Recorded diagnostic series. beta stays empty without ground truth.
struct MetricSeries {
  std::vector<std::uint64_t> iteration;
  std::vector<double> delta;
  std::vector<std::optional<double>> beta;
  std::vector<std::uint64_t> gamma;
};

}  // namespace heatmc
