#include "hre/linear_system.hpp"

#include <cmath>
#include <utility>

namespace hre {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> DenseMatrix::multiply(const std::vector<double>& x) const {
  std::vector<double> y(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) y[r] += (*this)(r, c) * x[c];
  return y;
}

std::optional<std::vector<double>> solve_linear(const LinearSystem& system) {
  const std::size_t k = system.size();
  DenseMatrix a = system.coefficients;
  std::vector<double> b = system.constants;

  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (!(std::abs(a(pivot, col)) >= kSingularPivot)) return std::nullopt;
    if (pivot != col) {
      for (std::size_t c = 0; c < k; ++c) std::swap(a(pivot, c), a(col, c));
      std::swap(b[pivot], b[col]);
    }
    for (std::size_t r = col + 1; r < k; ++r) {
      const double factor = a(r, col) / a(col, col);
      if (factor == 0.0) continue;
      a(r, col) = 0.0;
      for (std::size_t c = col + 1; c < k; ++c) a(r, c) -= factor * a(col, c);
      b[r] -= factor * b[col];
    }
  }

  std::vector<double> x(k, 0.0);
  for (std::size_t i = k; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < k; ++c) s -= a(i, c) * x[c];
    x[i] = s / a(i, i);
  }
  return x;
}

DominanceCheck check_convergence(const LinearSystem& system) {
  const auto& a = system.coefficients;
  const std::size_t k = system.size();
  DominanceCheck check{true, true};
  for (std::size_t i = 0; i < k; ++i) {
    double row = 0.0;
    double col = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      row += std::abs(a(i, j));
      col += std::abs(a(j, i));
    }
    if (!(row < std::abs(a(i, i)))) check.row_dominant = false;
    if (!(col < std::abs(a(i, i)))) check.column_dominant = false;
  }
  return check;
}

}  // namespace hre
