#include "heatmc/metrics.hpp"

#include <string>

namespace heatmc {

double delta_at(const BoundaryVector& d, const BoundaryVector& d_state) {
  if (d.size() != d_state.size()) {
    throw InputError("delta: data lengths differ (" + std::to_string(d.size()) + " vs " +
                     std::to_string(d_state.size()) + ")");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double r = d.values[k] - d_state.values[k];
    sum += r * r;
  }
  return sum;
}

double beta_at(const ConductivityField& k_correct, const ConductivityField& k_n) {
  if (!k_correct.same_shape(k_n)) throw InputError("beta: field shapes differ");
  double sum = 0.0;
  const auto a = k_correct.values();
  const auto b = k_n.values();
  for (std::size_t p = 0; p < a.size(); ++p) {
    const double r = a[p] - b[p];
    sum += r * r;
  }
  return sum;
}

double gamma_slope(std::span<const std::uint64_t> gamma) {
  const std::size_t len = gamma.size();
  if (len < 2) throw InputError("gamma series needs at least two points");
  // Centered sums keep the cancellation small for long series.
  const double mean_i = 0.5 * static_cast<double>(len - 1);
  double mean_g = 0.0;
  for (auto g : gamma) mean_g += static_cast<double>(g);
  mean_g /= static_cast<double>(len);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double di = static_cast<double>(i) - mean_i;
    sxy += di * (static_cast<double>(gamma[i]) - mean_g);
    sxx += di * di;
  }
  return sxy / sxx;
}

double gamma_slope(std::span<const double> iteration, std::span<const double> gamma) {
  if (iteration.size() != gamma.size()) throw InputError("gamma series lengths differ");
  if (gamma.size() < 2) throw InputError("gamma series needs at least two points");
  const double len = static_cast<double>(gamma.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    mx += iteration[k];
    my += gamma[k];
  }
  mx /= len;
  my /= len;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    sxy += (iteration[k] - mx) * (gamma[k] - my);
    sxx += (iteration[k] - mx) * (iteration[k] - mx);
  }
  if (!(sxx > 0.0)) throw InputError("gamma series has a single distinct iteration");
  return sxy / sxx;
}

}  // namespace heatmc
