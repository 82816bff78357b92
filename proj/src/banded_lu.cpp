#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "heatmc/error.hpp"
#include "heatmc/sparse.hpp"

namespace heatmc {

double SparseMatrix::at(std::size_t r, std::size_t c) const {
  double sum = 0.0;
  for (std::size_t k = row_begin(r); k < row_end(r); ++k) {
    if (cols_[k] == c) sum += vals_[k];
  }
  return sum;
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t r = 0; r < dim_; ++r) {
    double acc = 0.0;
    for (std::size_t k = row_begin(r); k < row_end(r); ++k) acc += vals_[k] * x[cols_[k]];
    y[r] = acc;
  }
}

std::size_t SparseMatrix::bandwidth() const {
  std::size_t bw = 0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t k = row_begin(r); k < row_end(r); ++k) {
      const std::size_t c = cols_[k];
      bw = std::max(bw, c > r ? c - r : r - c);
    }
  }
  return bw;
}

std::vector<double> SparseMatrix::to_dense() const {
  std::vector<double> dense(dim_ * dim_, 0.0);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t k = row_begin(r); k < row_end(r); ++k) dense[r * dim_ + cols_[k]] += vals_[k];
  }
  return dense;
}

void BandedLU::factorize(const SparseMatrix& a) {
  dim_ = a.dim();
  half_ = a.bandwidth();
  width_ = 2 * half_ + 1;
  band_.assign(dim_ * width_, 0.0);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t k = a.row_begin(r); k < a.row_end(r); ++k) at(r, a.col(k)) += a.value(k);
  }

  double scale = 0.0;
  for (double v : band_) scale = std::max(scale, std::abs(v));

  double pmax = 0.0;
  double pmin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < dim_; ++k) {
    const double pivot = at(k, k);
    const double mag = std::abs(pivot);
    pmax = std::max(pmax, mag);
    pmin = std::min(pmin, mag);
    if (!(mag > 64.0 * std::numeric_limits<double>::epsilon() * scale)) {
      pivot_ratio_ = std::numeric_limits<double>::infinity();
      throw SolveError("factorization failed: pivot " + std::to_string(k) +
                           " vanished (system singular or near-singular)",
                       pivot_ratio_);
    }
    const std::size_t last = std::min(dim_ - 1, k + half_);
    for (std::size_t i = k + 1; i <= last; ++i) {
      double& lik = at(i, k);
      if (lik == 0.0) continue;
      lik /= pivot;
      const double l = lik;
      const double* urow = &band_[k * width_ + half_];  // U(k, k..)
      double* arow = &band_[i * width_ + half_ - (i - k)];  // A(i, k..)
      for (std::size_t j = 1; j <= last - k; ++j) arow[j] -= l * urow[j];
    }
  }
  pivot_ratio_ = pmax / pmin;
}

void BandedLU::solve(std::span<const double> b, std::span<double> x) const {
  if (b.size() != dim_ || x.size() != dim_) throw InputError("banded solve: size mismatch");
  std::copy(b.begin(), b.end(), x.begin());
  for (std::size_t i = 0; i < dim_; ++i) {
    const std::size_t first = i > half_ ? i - half_ : 0;
    double acc = x[i];
    for (std::size_t k = first; k < i; ++k) acc -= at(i, k) * x[k];
    x[i] = acc;
  }
  for (std::size_t ii = dim_; ii-- > 0;) {
    const std::size_t last = std::min(dim_ - 1, ii + half_);
    double acc = x[ii];
    for (std::size_t k = ii + 1; k <= last; ++k) acc -= at(ii, k) * x[k];
    x[ii] = acc / at(ii, ii);
  }
}

}  // namespace heatmc
