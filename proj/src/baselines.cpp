#include "hre/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hre/error.hpp"

namespace hre {

namespace {

constexpr std::size_t kMaxPowerIterations = 10'000;
constexpr double kLambdaTolerance = 1e-12;
constexpr double kResidualTolerance = 1e-10;

void require_complete_positive(const PcMatrix& m) {
  if (!m.is_complete()) throw SolverError("incomplete matrix: every entry must be specified");
  for (Index i = 0; i < m.size(); ++i)
    for (Index j = 0; j < m.size(); ++j)
      if (!(m(i, j) > 0.0) || !std::isfinite(m(i, j))) throw SolverError("matrix entries must be positive");
}

std::vector<double> times(const PcMatrix& m, const std::vector<double>& v) {
  const std::size_t n = m.size();
  std::vector<double> out(n, 0.0);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) out[i] += m(i, j) * v[j];
  return out;
}

double max_abs(const std::vector<double>& v) {
  double r = 0.0;
  for (double x : v) r = std::max(r, std::abs(x));
  return r;
}

}  // namespace

EigenResult principal_eigen(const PcMatrix& matrix) {
  require_complete_positive(matrix);
  const std::size_t n = matrix.size();
  std::vector<double> v(n, 1.0);
  double lambda = 0.0;
  double residual = 0.0;

  for (std::size_t it = 1; it <= kMaxPowerIterations; ++it) {
    const auto mv = times(matrix, v);
    double estimate = 0.0;
    for (Index i = 0; i < n; ++i) estimate += mv[i] / v[i];
    estimate /= static_cast<double>(n);

    std::vector<double> r(n);
    for (Index i = 0; i < n; ++i) r[i] = mv[i] - estimate * v[i];
    residual = max_abs(r) / max_abs(v);

    const bool settled = std::abs(estimate - lambda) < kLambdaTolerance && residual <= kResidualTolerance;
    lambda = estimate;
    if (settled) return EigenResult{lambda, WeightVector(v), it, residual};

    const double scale = max_abs(mv);
    for (Index i = 0; i < n; ++i) v[i] = mv[i] / scale;
  }
  throw SolverError("power iteration did not converge (residual " + std::to_string(residual) + ")");
}

WeightVector ev_weights(const PcMatrix& matrix) {
  return principal_eigen(matrix).vector.normalize();
}

WeightVector gm_weights(const PcMatrix& matrix) {
  require_complete_positive(matrix);
  const std::size_t n = matrix.size();
  std::vector<double> g(n);
  for (Index i = 0; i < n; ++i) {
    double log_sum = 0.0;
    for (Index j = 0; j < n; ++j) log_sum += std::log(matrix(i, j));
    g[i] = std::exp(log_sum / static_cast<double>(n));
  }
  return WeightVector(std::move(g)).normalize();
}

}  // namespace hre
