#include "hre/min_error.hpp"

#include <algorithm>
#include <cmath>

#include "hre/error.hpp"
#include "hre/hre_solver.hpp"

namespace hre {

namespace {

// The reported resolution is the step after ten halvings; the search keeps
// refining ten levels further so that stalling on a lattice point in a
// narrow valley stays well inside that resolution.
constexpr std::size_t kResolutionLevels = 10;
constexpr std::size_t kRefinementLevels = 20;
constexpr std::size_t kMaxBruteForceUnknowns = 3;

std::vector<double> full_vector(const Problem& problem, std::span<const double> unknown_values) {
  std::vector<double> mu(problem.size(), 0.0);
  for (const auto& [ref, weight] : problem.references.weights) mu[ref] = weight;
  const auto unknowns = problem.unknowns();
  for (std::size_t r = 0; r < unknowns.size(); ++r) mu[unknowns[r]] = unknown_values[r];
  return mu;
}

}  // namespace

ErrorSystem build_error_system(const Problem& problem) {
  // b is shared with the averaging system; this also checks completeness.
  LinearSystem averaging = build_system(problem);
  const auto& m = problem.matrix;
  const auto& unknowns = averaging.unknown_index_map;
  const std::size_t k = unknowns.size();
  const double scale = 1.0 / static_cast<double>(m.size() - 1);

  ErrorSystem out{LinearSystem{DenseMatrix(k, k), averaging.constants, unknowns}, std::vector<double>(k, 0.0), false};
  auto& e = out.system.coefficients;
  for (std::size_t r = 0; r < k; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      if (c == r) continue;
      const double m_cr = m(unknowns[c], unknowns[r]);
      s += m_cr * m_cr;
      e(r, c) = -(m(unknowns[r], unknowns[c]) + m_cr) * scale;
    }
    out.s_values[r] = s * scale;
    e(r, r) = 1.0 + out.s_values[r];
  }
  out.hessian_dominant = check_convergence(out.system).row_dominant;
  return out;
}

DenseMatrix hessian(const ErrorSystem& error_system, std::size_t n) {
  const auto& e = error_system.system.coefficients;
  const double factor = 2.0 * static_cast<double>(n - 1);
  DenseMatrix h(e.rows(), e.cols());
  for (std::size_t r = 0; r < e.rows(); ++r)
    for (std::size_t c = 0; c < e.cols(); ++c) h(r, c) = factor * e(r, c);
  return h;
}

double squared_error_objective(const Problem& problem, std::span<const double> unknown_values) {
  const auto& m = problem.matrix;
  const auto mu = full_vector(problem, unknown_values);
  double f = 0.0;
  for (Index j : problem.unknowns()) {
    for (Index i = 0; i < problem.size(); ++i) {
      if (i == j) continue;
      const double d = mu[j] - mu[i] * m(j, i);
      f += d * d;
    }
  }
  return f;
}

std::string_view to_string(MinErrorStatus status) {
  switch (status) {
    case MinErrorStatus::solved: return "solved";
    case MinErrorStatus::singular: return "singular";
    case MinErrorStatus::inadmissible: return "inadmissible";
  }
  return "unknown";
}

MinErrorResult solve_min_error(const Problem& problem) {
  const auto es = build_error_system(problem);
  MinErrorResult result{MinErrorStatus::singular, std::nullopt, {}, false};
  auto solution = solve_linear(es.system);
  if (!solution) return result;
  result.solution = *solution;
  if (!std::all_of(solution->begin(), solution->end(), [](double v) { return v > kAdmissibleWeight; })) {
    result.status = MinErrorStatus::inadmissible;
    return result;
  }
  result.status = MinErrorStatus::solved;
  result.weights = WeightVector(full_vector(problem, *solution));
  result.verified_minimum = es.hessian_dominant;
  return result;
}

double brute_force_resolution(double low, double high, std::size_t grid_points) {
  return (high - low) / static_cast<double>(grid_points - 1) / static_cast<double>(1u << kResolutionLevels);
}

WeightVector brute_force_min_error(const Problem& problem, double low, double high, std::size_t grid_points) {
  const auto unknowns = problem.unknowns();
  const std::size_t k = unknowns.size();
  if (k > kMaxBruteForceUnknowns) throw InputError("grid search supports at most three unknown concepts");
  if (grid_points < 2 || !(low < high)) throw InputError("grid search needs low < high and at least two points");
  if (!problem.matrix.is_complete()) throw InputError("incomplete matrix");
  if (k == 0) return WeightVector(full_vector(problem, {}));

  const double step0 = (high - low) / static_cast<double>(grid_points - 1);
  std::vector<double> best(k, low);
  double best_f = squared_error_objective(problem, best);

  std::vector<std::size_t> idx(k, 0);
  std::vector<double> point(k);
  while (true) {
    for (std::size_t d = 0; d < k; ++d) point[d] = low + step0 * static_cast<double>(idx[d]);
    const double f = squared_error_objective(problem, point);
    if (f < best_f) {
      best_f = f;
      best = point;
    }
    std::size_t d = 0;
    while (d < k && ++idx[d] == grid_points) idx[d++] = 0;
    if (d == k) break;
  }

  // Local refinement: at each halved step, move to the best of the 3^k - 1
  // neighbours until none improves.
  std::size_t neighbours = 1;
  for (std::size_t d = 0; d < k; ++d) neighbours *= 3;
  double step = step0;
  for (std::size_t level = 0; level < kRefinementLevels; ++level) {
    step /= 2.0;
    for (bool improved = true; improved;) {
      improved = false;
      std::vector<double> candidate_best = best;
      for (std::size_t code = 0; code < neighbours; ++code) {
        std::size_t c = code;
        for (std::size_t d = 0; d < k; ++d, c /= 3) {
          const double offset = static_cast<double>(static_cast<int>(c % 3) - 1) * step;
          point[d] = std::clamp(best[d] + offset, low, high);
        }
        const double f = squared_error_objective(problem, point);
        if (f < best_f) {
          best_f = f;
          candidate_best = point;
          improved = true;
        }
      }
      best = candidate_best;
    }
  }
  return WeightVector(full_vector(problem, best));
}

}  // namespace hre
