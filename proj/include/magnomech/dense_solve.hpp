#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "magnomech/units.hpp"

namespace magnomech {

/// Small dense row-major complex matrix.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const { return n_; }
  cd& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
  const cd& operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }

  std::span<const cd> row(std::size_t r) const { return {data_.data() + r * n_, n_}; }

  std::vector<cd> multiply(std::span<const cd> v) const;

 private:
  std::size_t n_;
  std::vector<cd> data_;
};

/// Pivot-magnitude ratio above which a system is reported as near-singular.
inline constexpr double kMaxPivotRatio = 1e12;

/// Gaussian elimination with partial pivoting. Throws NearSingularError when
/// the largest/smallest pivot ratio exceeds kMaxPivotRatio.
std::vector<cd> solve_dense(ComplexMatrix m, std::span<const cd> rhs);

}  // namespace magnomech
