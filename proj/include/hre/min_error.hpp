#pragma once

// Minimizing-estimation-error heuristic. The absolute residuals
// |mu_j - mu_i m_ji| are replaced by squares, which turns the search for
// the best mu into the normal system E mu = b with Hessian 2(n-1)E.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hre/linear_system.hpp"
#include "hre/matrix.hpp"
#include "hre/weights.hpp"

namespace hre {

struct ErrorSystem {
  LinearSystem system;          // coefficients = E, constants = b
  std::vector<double> s_values; // S_j = sum over other unknowns i of m_ij^2, over n-1
  bool hessian_dominant;        // E strictly diagonally dominant by rows
};

/// E_jj = 1 + S_j, E_ji = -(m_ji + m_ij) / (n-1) over unknown concepts; b
/// is the averaging system's constant vector. Throws InputError for an
/// incomplete matrix or an empty reference set.
ErrorSystem build_error_system(const Problem& problem);

/// H = 2(n-1) E.
DenseMatrix hessian(const ErrorSystem& error_system, std::size_t n);

/// f(mu) = sum over unknown j, i != j of (mu_j - mu_i m_ji)^2; `unknown_values`
/// follows Problem::unknowns() order, references use their fixed weights.
double squared_error_objective(const Problem& problem, std::span<const double> unknown_values);

enum class MinErrorStatus { solved, singular, inadmissible };

std::string_view to_string(MinErrorStatus status);

struct MinErrorResult {
  MinErrorStatus status;
  std::optional<WeightVector> weights;  // full unnormalized vector when solved
  std::vector<double> solution;         // raw solve in unknowns() order, if non-singular
  bool verified_minimum = false;        // E strictly dominant, so the point is a minimum of f
};

/// Solves E mu = b. A non-singular, admissible solution is returned even
/// when dominance fails, flagged as an unverified minimum.
MinErrorResult solve_min_error(const Problem& problem);

/// Grid search of f over [low, high]^k followed by a local pattern search
/// that halves the step twenty times around the incumbent. Test oracle only;
/// throws InputError for k > 3.
WeightVector brute_force_min_error(const Problem& problem, double low, double high, std::size_t grid_points);

/// Accuracy the grid search guarantees: the initial step halved ten times.
double brute_force_resolution(double low, double high, std::size_t grid_points);

}  // namespace hre
