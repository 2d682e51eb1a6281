#pragma once

// Heuristic Rating Estimation: weights of the unknown concepts are the
// average of the ratio-scaled weights of all other concepts, with the
// reference concepts held fixed. For a complete matrix the fixed point is
// the linear system A mu = b; incomplete matrices are handled by the
// iterative form directly.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hre/linear_system.hpp"
#include "hre/matrix.hpp"
#include "hre/weights.hpp"

namespace hre {

/// Solved weights at or below this value are not admissible.
inline constexpr double kAdmissibleWeight = 1e-9;

/// Builds A (unit diagonal, a_rc = -m_{u_r u_c} / (n-1)) and
/// b_r = sum over references c of m_{u_r c} mu(c) / (n-1).
/// Throws InputError for an incomplete matrix or an empty reference set.
LinearSystem build_system(const Problem& problem);

/// One iterate of the averaging procedure; a concept holds no value until
/// one of its compared neighbours has an estimate.
using Iterate = std::vector<std::optional<double>>;

struct JacobiRun {
  std::vector<Iterate> iterates;  // mu_1 .. mu_r
  bool converged = false;         // relative max-norm step < tolerance
  bool diverged = false;          // a value left (0, 1e12] or became non-finite
};

inline constexpr double kJacobiTolerance = 1e-10;
inline constexpr double kDivergenceBound = 1e12;

/// Runs at most `max_iterations` averaging steps starting from the
/// reference weights alone. At each step an unknown concept's estimate is
/// the mean of m_ji * mu(c_i) over concepts c_i != c_j that already have an
/// estimate and for which m_ji is specified. Reference weights never change.
/// Stops early on convergence or divergence; a diverging iterate is not
/// recorded. Throws InputError when some unknown concept is unreachable.
JacobiRun jacobi_iterate(const Problem& problem, std::size_t max_iterations,
                         double tolerance = kJacobiTolerance);

struct BestIterate {
  WeightVector weights;  // unnormalized
  std::size_t index;     // 0-based position in the iterate list
  double error;          // e^_mu of the chosen iterate
};

/// The admissible iterate (fully defined, every weight > kAdmissibleWeight)
/// with the smallest mean estimation error; ties go to the earliest.
/// Throws SolverError when no iterate is admissible.
BestIterate select_best_iterate(std::span<const Iterate> iterates, const Problem& problem);

struct Synthesis {
  WeightVector weights;     // solved unknowns interleaved with references
  WeightVector normalized;  // rescaled to sum to one
};

/// `solved` holds the unknowns in Problem::unknowns() order. Throws
/// SolverError if a solved value is not admissible.
Synthesis synthesize(std::span<const double> solved, const Problem& problem);

enum class SolutionPath { direct, jacobi, min_error, best_iterate };

std::string_view to_string(SolutionPath path);

struct RankOptions {
  std::size_t max_iterations = 10;  // iterates considered by the best-iterate fallback
  bool normalize = false;
};

struct RankOutcome {
  WeightVector weights;       // normalized iff RankOptions::normalize
  WeightVector unnormalized;  // references carry their input values exactly
  SolutionPath path;
  bool convergence_ok;        // diagonal dominance of A, or observed convergence when incomplete
  bool determinant_ok;        // a direct solve was attempted and was non-singular
  bool admissible;            // the primary (direct or converged) solution was positive
  double error;               // e^_mu of `unnormalized`
  std::size_t iterations_used;
  std::vector<std::string> warnings;
};

/// Full pipeline: validate, restore reciprocity, fill reference ratios,
/// then for a complete matrix the direct solve with min-error and
/// best-iterate fallbacks, and for an incomplete one the iterative
/// procedure (converged iterate, else best of the first max_iterations).
/// Throws InputError for invalid or unreachable problems and SolverError
/// when every strategy fails.
RankOutcome hre_rank(const Problem& problem, const RankOptions& options = {});

}  // namespace hre
