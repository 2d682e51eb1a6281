#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hre/matrix.hpp"

namespace hre {

/// Row-major dense matrix for the small systems the solvers build.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<double> multiply(const std::vector<double>& x) const;

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// A k x k system over the unknown concepts. Row r corresponds to concept
/// unknown_index_map[r] of the originating problem.
struct LinearSystem {
  DenseMatrix coefficients;
  std::vector<double> constants;
  std::vector<Index> unknown_index_map;

  std::size_t size() const noexcept { return constants.size(); }
};

/// Pivot magnitude below which a system is treated as singular.
inline constexpr double kSingularPivot = 1e-12;

/// Gaussian elimination with partial pivoting. Returns nullopt when some
/// pivot falls below kSingularPivot.
std::optional<std::vector<double>> solve_linear(const LinearSystem& system);

struct DominanceCheck {
  bool row_dominant;
  bool column_dominant;

  /// Either form of strict diagonal dominance guarantees Jacobi convergence.
  bool jacobi_convergent() const noexcept { return row_dominant || column_dominant; }
};

/// Strict diagonal dominance of the coefficient matrix by rows and by
/// columns: sum of |off-diagonal| < |diagonal| on every line.
DominanceCheck check_convergence(const LinearSystem& system);

}  // namespace hre
