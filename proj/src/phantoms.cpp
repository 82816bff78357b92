#include "heatmc/phantoms.hpp"

#include <cmath>

#include "heatmc/error.hpp"

namespace heatmc::phantoms {
namespace {

void require_dims(std::size_t n, std::size_t m) {
  if (n < 2 || m < 2) throw InputError("phantom needs at least a 2x2 grid");
}

}  // namespace

ConductivityField constant(double v, std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw InputError("phantom needs a nonempty grid");
  if (!(v > 0.0)) throw InputError("constant phantom value must be positive");
  return ConductivityField(n, m, v);
}

ConductivityField tilted_plane(double base, double gx, double gy, std::size_t n, std::size_t m) {
  require_dims(n, m);
  ConductivityField k(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      k(i, j) = base + gx * static_cast<double>(j) / static_cast<double>(m - 1) +
                gy * static_cast<double>(i) / static_cast<double>(n - 1);
    }
  }
  require_positive(k, 0.0);
  return k;
}

ConductivityField gaussian_well(double base, double depth, double cx, double cy, double s,
                                std::size_t n, std::size_t m) {
  require_dims(n, m);
  if (!(base - depth > 0.0)) throw InputError("gaussian well needs base - depth > 0");
  if (!(s > 0.0)) throw InputError("gaussian well width must be positive");
  ConductivityField k(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = static_cast<double>(i) / static_cast<double>(n - 1);
    for (std::size_t j = 0; j < m; ++j) {
      const double x = static_cast<double>(j) / static_cast<double>(m - 1);
      const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
      k(i, j) = base - depth * std::exp(-r2 / (2.0 * s * s));
    }
  }
  require_positive(k, 0.0);
  return k;
}

}  // namespace heatmc::phantoms
