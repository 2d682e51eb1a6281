#include "hre/hre_solver.hpp"

#include <algorithm>
#include <cmath>

#include "hre/diagnostics.hpp"
#include "hre/error.hpp"
#include "hre/min_error.hpp"

namespace hre {

namespace {

constexpr std::size_t kConvergentIterationCap = 1000;

void require_references(const Problem& problem) {
  if (problem.references.empty()) throw InputError("at least one reference concept is required");
}

bool all_admissible(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return v > kAdmissibleWeight; });
}

std::vector<double> full_values(const Iterate& it) {
  std::vector<double> out;
  out.reserve(it.size());
  for (const auto& v : it) out.push_back(v.value_or(0.0));
  return out;
}

bool fully_defined(const Iterate& it) {
  return std::all_of(it.begin(), it.end(), [](const auto& v) { return v.has_value(); });
}

}  // namespace

LinearSystem build_system(const Problem& problem) {
  require_references(problem);
  const auto& m = problem.matrix;
  if (!m.is_complete()) throw InputError("incomplete matrix: the averaging system needs every entry");

  const auto unknowns = problem.unknowns();
  const std::size_t k = unknowns.size();
  const double scale = 1.0 / static_cast<double>(m.size() - 1);

  LinearSystem sys{DenseMatrix::identity(k), std::vector<double>(k, 0.0), unknowns};
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c)
      if (r != c) sys.coefficients(r, c) = -m(unknowns[r], unknowns[c]) * scale;
    double b = 0.0;
    for (const auto& [ref, weight] : problem.references.weights) b += m(unknowns[r], ref) * weight;
    sys.constants[r] = b * scale;
  }
  return sys;
}

JacobiRun jacobi_iterate(const Problem& problem, std::size_t max_iterations, double tolerance) {
  require_references(problem);
  if (auto reach = is_reachable(problem); !reach.reachable) {
    std::string list;
    for (Index j : reach.unreachable) list += (list.empty() ? "" : ", ") + std::to_string(j + 1);
    throw InputError("unreachable concepts: " + list);
  }

  const auto& m = problem.matrix;
  const std::size_t n = m.size();
  const auto unknowns = problem.unknowns();

  Iterate previous(n);
  for (const auto& [ref, weight] : problem.references.weights) previous[ref] = weight;

  JacobiRun run;
  for (std::size_t r = 1; r <= max_iterations; ++r) {
    Iterate current = previous;
    for (Index j : unknowns) {
      double sum = 0.0;
      std::size_t count = 0;
      for (Index i = 0; i < n; ++i) {
        if (i == j || !previous[i] || !m.present(j, i)) continue;
        sum += m(j, i) * *previous[i];
        ++count;
      }
      current[j] = count == 0 ? std::nullopt : std::optional<double>(sum / static_cast<double>(count));
    }

    for (Index j : unknowns) {
      if (current[j] && !(std::isfinite(*current[j]) && std::abs(*current[j]) <= kDivergenceBound)) {
        run.diverged = true;
        return run;
      }
    }
    run.iterates.push_back(current);

    if (fully_defined(previous) && fully_defined(current)) {
      double step = 0.0;
      double norm = 0.0;
      for (Index i = 0; i < n; ++i) {
        step = std::max(step, std::abs(*current[i] - *previous[i]));
        norm = std::max(norm, std::abs(*current[i]));
      }
      if (step < tolerance * norm) {
        run.converged = true;
        return run;
      }
    }
    previous = std::move(current);
  }
  return run;
}

BestIterate select_best_iterate(std::span<const Iterate> iterates, const Problem& problem) {
  std::optional<BestIterate> best;
  for (std::size_t q = 0; q < iterates.size(); ++q) {
    const auto& it = iterates[q];
    if (!fully_defined(it)) continue;
    auto values = full_values(it);
    if (!all_admissible(values)) continue;
    const double err = estimation_error(problem, values).mean;
    if (!best || err < best->error) best.emplace(BestIterate{WeightVector(std::move(values)), q, err});
  }
  if (!best) throw SolverError("no admissible iterate");
  return *best;
}

Synthesis synthesize(std::span<const double> solved, const Problem& problem) {
  const auto unknowns = problem.unknowns();
  if (solved.size() != unknowns.size()) throw InputError("solution length does not match the unknown concepts");
  if (!all_admissible(solved)) throw SolverError("solution is not admissible: some weight is not positive");
  std::vector<double> mu(problem.size());
  for (const auto& [ref, weight] : problem.references.weights) mu[ref] = weight;
  for (std::size_t r = 0; r < unknowns.size(); ++r) mu[unknowns[r]] = solved[r];
  WeightVector weights(std::move(mu));
  auto normalized = weights.normalize();
  return Synthesis{std::move(weights), std::move(normalized)};
}

std::string_view to_string(SolutionPath path) {
  switch (path) {
    case SolutionPath::direct: return "direct";
    case SolutionPath::jacobi: return "jacobi";
    case SolutionPath::min_error: return "min-error";
    case SolutionPath::best_iterate: return "best-iterate";
  }
  return "unknown";
}

RankOutcome hre_rank(const Problem& input, const RankOptions& options) {
  auto prepared = prepare(input);
  const Problem& problem = prepared.problem;

  std::vector<std::string> warnings;
  for (const auto& w : prepared.warnings) warnings.push_back(w.message);

  std::optional<WeightVector> weights;
  SolutionPath path = SolutionPath::direct;
  bool convergence_ok = false;
  bool determinant_ok = false;
  bool admissible = false;
  std::size_t iterations = 0;

  if (problem.matrix.is_complete()) {
    const auto system = build_system(problem);
    convergence_ok = check_convergence(system).jacobi_convergent();
    const auto solution = solve_linear(system);
    determinant_ok = solution.has_value();
    admissible = solution && all_admissible(*solution);

    if (admissible) {
      weights = synthesize(*solution, problem).weights;
    } else {
      warnings.push_back(determinant_ok ? "averaging system has no admissible solution"
                                        : "averaging system is singular");
      const auto min_error = solve_min_error(problem);
      if (min_error.status == MinErrorStatus::solved) {
        path = SolutionPath::min_error;
        weights = *min_error.weights;
        if (!min_error.verified_minimum) warnings.push_back("min-error solution is an unverified minimum");
      } else {
        warnings.push_back("min-error heuristic failed: " + std::string(to_string(min_error.status)));
        const auto run = jacobi_iterate(problem, options.max_iterations);
        auto best = select_best_iterate(run.iterates, problem);
        path = SolutionPath::best_iterate;
        iterations = best.index + 1;
        weights = std::move(best.weights);
      }
    }
  } else {
    const auto run = jacobi_iterate(problem, kConvergentIterationCap);
    convergence_ok = run.converged;
    if (run.converged) {
      auto values = full_values(run.iterates.back());
      admissible = all_admissible(values);
      if (admissible) {
        path = SolutionPath::jacobi;
        iterations = run.iterates.size();
        weights = WeightVector(std::move(values));
      }
    }
    if (!weights) {
      warnings.push_back("iterative procedure did not converge; using the best early iterate");
      const std::size_t prefix = std::min(options.max_iterations, run.iterates.size());
      auto best = select_best_iterate(std::span(run.iterates).first(prefix), problem);
      path = SolutionPath::best_iterate;
      iterations = best.index + 1;
      weights = std::move(best.weights);
    }
  }

  const double error = estimation_error(problem, weights->values()).mean;
  WeightVector reported = options.normalize ? weights->normalize() : *weights;
  return RankOutcome{std::move(reported), std::move(*weights), path,  convergence_ok, determinant_ok,
                     admissible,          error,                iterations, std::move(warnings)};
}

}  // namespace hre
