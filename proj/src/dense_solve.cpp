#include "magnomech/dense_solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "magnomech/errors.hpp"

namespace magnomech {

std::vector<cd> ComplexMatrix::multiply(std::span<const cd> v) const {
  std::vector<cd> out(n_);
  for (std::size_t r = 0; r < n_; ++r) {
    cd acc{};
    for (std::size_t c = 0; c < n_; ++c) acc += (*this)(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

std::vector<cd> solve_dense(ComplexMatrix m, std::span<const cd> rhs) {
  const std::size_t n = m.size();
  std::vector<cd> b(rhs.begin(), rhs.end());
  double max_pivot = 0.0;
  double min_pivot = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(m(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      const double v = std::abs(m(r, k));
      if (v > best) {
        best = v;
        p = r;
      }
    }
    if (best == 0.0) throw NearSingularError("matrix is singular");
    max_pivot = std::max(max_pivot, best);
    min_pivot = std::min(min_pivot, best);
    if (p != k) {
      for (std::size_t c = k; c < n; ++c) std::swap(m(k, c), m(p, c));
      std::swap(b[k], b[p]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const cd f = m(r, k) / m(k, k);
      if (f == cd{}) continue;
      for (std::size_t c = k + 1; c < n; ++c) m(r, c) -= f * m(k, c);
      m(r, k) = 0.0;
      b[r] -= f * b[k];
    }
  }
  if (max_pivot / min_pivot > kMaxPivotRatio) {
    throw NearSingularError("pivot ratio " + std::to_string(max_pivot / min_pivot) + " exceeds limit");
  }

  std::vector<cd> x(n);
  for (std::size_t i = n; i-- > 0;) {
    cd acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= m(i, c) * x[c];
    x[i] = acc / m(i, i);
  }
  return x;
}

}  // namespace magnomech
