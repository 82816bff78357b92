#include "heatmc/grid.hpp"

#include <cmath>
#include <string>

namespace heatmc {

void require_positive(const ConductivityField& k, double k_min) {
  for (std::size_t i = 0; i < k.rows(); ++i) {
    for (std::size_t j = 0; j < k.cols(); ++j) {
      const double v = k(i, j);
      if (!(v > k_min) || !std::isfinite(v)) {
        throw InputError("conductivity at (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") = " + std::to_string(v) + " is not above the floor " +
                         std::to_string(k_min));
      }
    }
  }
}

std::size_t GridSpec::cpu_node_count() const {
  if (!(cpu_segment_fraction > 0.0)) return 0;
  // Nodes with y_i <= fraction * ly; the slack absorbs rounding in i * hy.
  const double reach = cpu_segment_length() / hy();
  const auto count = static_cast<std::size_t>(std::floor(reach + 1e-9)) + 1;
  return count < n ? count : n;
}

double GridSpec::input_flux() const {
  if (power == 0.0) return 0.0;
  return power / (cpu_segment_length() * thickness);
}

void GridSpec::validate() const {
  if (n < 3 || m < 3) throw InputError("grid needs n >= 3 and m >= 3");
  if (!(lx > 0.0) || !(ly > 0.0)) throw InputError("grid side lengths must be positive");
  if (!(h_conv >= 0.0)) throw InputError("h_conv must be >= 0");
  if (!(thickness > 0.0)) throw InputError("thickness must be positive");
  if (!(power >= 0.0)) throw InputError("power must be >= 0");
  if (cpu_segment_fraction < 0.0 || cpu_segment_fraction > 0.5 + 1e-12) {
    throw InputError("cpu_segment_fraction must lie in [0, 0.5]");
  }
  if (power > 0.0 && cpu_node_count() == 0) {
    throw InputError("power > 0 requires a nonempty cpu segment");
  }
}

void require_shape(const ConductivityField& k, const GridSpec& g) {
  if (!k.same_shape(g.n, g.m)) {
    throw InputError("conductivity field is " + std::to_string(k.rows()) + "x" +
                     std::to_string(k.cols()) + " but the grid is " + std::to_string(g.n) +
                     "x" + std::to_string(g.m));
  }
}

}  // namespace heatmc
