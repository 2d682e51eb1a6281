#pragma once

// Inconsistency indices, the HRE estimation error and the Condition of
// Order Preservation (COP) check.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hre/matrix.hpp"

namespace hre {

struct KoczkodajResult {
  std::optional<double> value;   // absent when no triad is fully specified
  std::size_t triads_evaluated;  // unordered triads with all entries present
};

/// Koczkodaj's index: worst triad distance min(|1 - m_ij/(m_ik m_kj)|,
/// |1 - m_ik m_kj / m_ij|) over fully specified triads. Expects a
/// reciprocal matrix. Throws InputError for n <= 2.
KoczkodajResult koczkodaj(const PcMatrix& matrix);
std::optional<double> koczkodaj_index(const PcMatrix& matrix);

/// Saaty's CI = (lambda_max - n) / (n - 1). Throws SolverError on an
/// incomplete matrix.
double saaty_ci(const PcMatrix& matrix);

struct InconsistencyReport {
  std::optional<double> saaty_ci;   // complete matrices only
  std::optional<double> koczkodaj;  // n > 2 and at least one complete triad
  std::size_t triads_evaluated = 0;
};

InconsistencyReport inconsistency(const PcMatrix& matrix);

struct EstimationError {
  std::vector<Index> concepts;  // C_U in ascending order
  std::vector<double> errors;   // e_mu per concept in `concepts`
  double mean = 0.0;            // e^_mu; zero when C_U is empty
};

/// Average absolute estimation error of `mu` over the unknown concepts:
/// e(c_j) = mean over i != j with m_ji present of |mu_j - mu_i m_ji|.
/// Throws InputError if some unknown has no present comparison.
EstimationError estimation_error(const Problem& problem, std::span<const double> mu);

struct CopViolation {
  Index i, j, k, l;  // m_ij > m_kl
  double ratio_ij;   // mu_i / mu_j
  double ratio_kl;   // mu_k / mu_l
};

struct CopReport {
  std::vector<CopViolation> pop_violations;
  std::vector<CopViolation> poip_violations;
  std::size_t quadruples_checked = 0;

  bool satisfies_cop() const noexcept { return pop_violations.empty() && poip_violations.empty(); }
};

/// Checks every ordered pair of comparisons ((i,j),(k,l)) with m_ij > 1,
/// m_kl >= 1 and m_ij > m_kl. POP requires mu_i > mu_j, and mu_k > mu_l
/// whenever m_kl > 1. POIP requires mu_i/mu_j > mu_k/mu_l, strictly; ties
/// are violations. A comparison m_kl = 1 (indifference) therefore only
/// constrains intensity: c_i must beat c_j by a larger factor than the
/// tied pair. O(n^4) in the number of concepts.
CopReport cop_check(const PcMatrix& matrix, std::span<const double> mu);

}  // namespace hre
