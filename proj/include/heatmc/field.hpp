#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "heatmc/error.hpp"

namespace heatmc {

/// Dense rows x cols grid of doubles stored row-major. Row i is the mesh line
/// y = i*hy, column j is x = j*hx. The tag keeps conductivity and temperature
/// fields from being mixed up at call sites.
template <class Tag>
class Field {
 public:
  Field() = default;
  Field(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}
  Field(std::size_t rows, std::size_t cols, std::vector<double> values)
      : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != rows_ * cols_) {
      throw InputError("field value count does not match its dimensions");
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& raw() const { return values_; }

  bool same_shape(std::size_t rows, std::size_t cols) const {
    return rows_ == rows && cols_ == cols;
  }
  template <class OtherTag>
  bool same_shape(const Field<OtherTag>& other) const {
    return same_shape(other.rows(), other.cols());
  }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

struct ConductivityTag {};
struct TemperatureTag {};
struct DerivativeTag {};

using ConductivityField = Field<ConductivityTag>;
using TemperatureField = Field<TemperatureTag>;
/// Finite-difference derivative of another field (e.g. K_xy).
using DerivativeField = Field<DerivativeTag>;

/// Ordered observation vector: boundary temperatures d, d', d_n.
struct BoundaryVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  friend bool operator==(const BoundaryVector&, const BoundaryVector&) = default;
};

/// Throws InputError unless every entry exceeds k_min.
void require_positive(const ConductivityField& k, double k_min);

}  // namespace heatmc
