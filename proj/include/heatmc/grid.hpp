#pragma once

#include <cstddef>

#include "heatmc/field.hpp"

namespace heatmc {

/// Fin geometry and physical constants.
///
/// Units: lengths in cm, h_conv in W cm^-2 C^-1, power in W. The CPU is
/// attached along the left edge (column 0) from y = 0 up to
/// y = cpu_segment_fraction * ly, which must not exceed ly / 2.
struct GridSpec {
  std::size_t n = 20;  ///< node rows (y direction)
  std::size_t m = 20;  ///< node columns (x direction)
  double lx = 2.0;
  double ly = 2.0;
  double h_conv = 0.005;
  double thickness = 0.1;
  double power = 5.0;
  double cpu_segment_fraction = 0.5;

  double hx() const { return lx / static_cast<double>(m - 1); }
  double hy() const { return ly / static_cast<double>(n - 1); }
  std::size_t node_count() const { return n * m; }
  std::size_t boundary_count() const { return 2 * (n + m) - 4; }

  /// Physical length of the heated segment.
  double cpu_segment_length() const { return cpu_segment_fraction * ly; }
  /// Number of left-edge nodes in the heated segment (rows 0..count-1).
  std::size_t cpu_node_count() const;
  bool is_cpu_node(std::size_t i, std::size_t j) const {
    return j == 0 && i < cpu_node_count();
  }
  /// Inward heat flux density on the CPU segment, P / (length * thickness).
  double input_flux() const;

  /// Throws InputError describing the first violated invariant.
  void validate() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Throws InputError unless k has the grid's n x m shape.
void require_shape(const ConductivityField& k, const GridSpec& g);

}  // namespace heatmc
