#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace heatmc {

/// Compressed sparse row matrix, square. Built row by row.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  explicit SparseMatrix(std::size_t dim) : dim_(dim) { row_start_.reserve(dim + 1); row_start_.push_back(0); }

  /// Entries for row r must be added before row r+1 is started.
  void add(std::size_t col, double value) {
    cols_.push_back(col);
    vals_.push_back(value);
  }
  void finish_row() { row_start_.push_back(cols_.size()); }

  std::size_t dim() const { return dim_; }
  std::size_t nonzeros() const { return vals_.size(); }
  std::size_t row_begin(std::size_t r) const { return row_start_[r]; }
  std::size_t row_end(std::size_t r) const { return row_start_[r + 1]; }
  std::size_t col(std::size_t k) const { return cols_[k]; }
  double value(std::size_t k) const { return vals_[k]; }

  /// Entry (r, c), zero if not stored. Duplicates are summed.
  double at(std::size_t r, std::size_t c) const;
  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
  /// Largest |r - c| over stored entries.
  std::size_t bandwidth() const;
  /// Row-major dense copy, dim*dim.
  std::vector<double> to_dense() const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::size_t> row_start_;
  std::vector<std::size_t> cols_;
  std::vector<double> vals_;
};

/// A vec(u) = b for a field flattened row-major.
struct LinearSystem {
  SparseMatrix matrix;
  std::vector<double> rhs;
};

/// In-place banded LU without pivoting. Valid for the diagonally dominant
/// matrices the fin discretization produces; a vanishing pivot is reported
/// as a SolveError carrying the pivot-ratio condition estimate.
class BandedLU {
 public:
  BandedLU() = default;

  void factorize(const SparseMatrix& a);
  void solve(std::span<const double> b, std::span<double> x) const;

  std::size_t dim() const { return dim_; }
  /// max|pivot| / min|pivot| of the last factorization.
  double pivot_ratio() const { return pivot_ratio_; }

 private:
  double& at(std::size_t r, std::size_t c) { return band_[r * width_ + (c + half_) - r]; }
  double at(std::size_t r, std::size_t c) const { return band_[r * width_ + (c + half_) - r]; }

  std::size_t dim_ = 0;
  std::size_t half_ = 0;
  std::size_t width_ = 0;
  double pivot_ratio_ = 1.0;
  std::vector<double> band_;
};

}  // namespace heatmc
