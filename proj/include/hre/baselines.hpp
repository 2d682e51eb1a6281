#pragma once

// Classic priority derivation methods used as comparison points for HRE:
// the principal eigenvector and the row geometric mean.

#include <cstddef>

#include "hre/matrix.hpp"
#include "hre/weights.hpp"

namespace hre {

struct EigenResult {
  double lambda_max;
  WeightVector vector;  // unnormalized, max-norm 1
  std::size_t iterations;
  double residual;      // max-norm of (M v - lambda v) / ||v||
};

/// Power iteration from the uniform vector. Stops once successive
/// eigenvalue estimates differ by < 1e-12 and the residual is <= 1e-10.
/// Throws SolverError for an incomplete or non-positive matrix, or when
/// 10'000 iterations do not reach the tolerance.
EigenResult principal_eigen(const PcMatrix& matrix);

/// Principal eigenvector rescaled to sum to one.
WeightVector ev_weights(const PcMatrix& matrix);

/// Row geometric means rescaled to sum to one. Computed in log space.
WeightVector gm_weights(const PcMatrix& matrix);

}  // namespace hre
