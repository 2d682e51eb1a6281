#include "hre/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "hre/baselines.hpp"
#include "hre/error.hpp"

namespace hre {

namespace {

double triad_distance(double direct, double via) {
  const double x = direct / via;
  return std::min(std::abs(1.0 - x), std::abs(1.0 - 1.0 / x));
}

}  // namespace

KoczkodajResult koczkodaj(const PcMatrix& matrix) {
  const std::size_t n = matrix.size();
  if (n <= 2) throw InputError("Koczkodaj's index needs more than two concepts");
  KoczkodajResult result{std::nullopt, 0};
  for (Index a = 0; a < n; ++a) {
    for (Index b = a + 1; b < n; ++b) {
      for (Index c = b + 1; c < n; ++c) {
        // Every labelling of the triad is scored; for reciprocal input they
        // coincide, for non-reciprocal input the worst one is kept.
        const Index t[3] = {a, b, c};
        bool complete = true;
        for (Index x : t)
          for (Index y : t)
            if (x != y && !matrix.present(x, y)) complete = false;
        if (!complete) continue;
        ++result.triads_evaluated;
        std::array<Index, 3> p{a, b, c};
        do {
          const Index i = p[0], k = p[1], j = p[2];
          const double d = triad_distance(matrix(i, j), matrix(i, k) * matrix(k, j));
          if (!result.value || d > *result.value) result.value = d;
        } while (std::next_permutation(p.begin(), p.end()));
      }
    }
  }
  return result;
}

std::optional<double> koczkodaj_index(const PcMatrix& matrix) { return koczkodaj(matrix).value; }

double saaty_ci(const PcMatrix& matrix) {
  const double n = static_cast<double>(matrix.size());
  return (principal_eigen(matrix).lambda_max - n) / (n - 1.0);
}

InconsistencyReport inconsistency(const PcMatrix& matrix) {
  InconsistencyReport report;
  if (matrix.is_complete()) report.saaty_ci = saaty_ci(matrix);
  if (matrix.size() > 2) {
    auto k = koczkodaj(matrix);
    report.koczkodaj = k.value;
    report.triads_evaluated = k.triads_evaluated;
  }
  return report;
}

EstimationError estimation_error(const Problem& problem, std::span<const double> mu) {
  const auto& m = problem.matrix;
  const std::size_t n = m.size();
  if (mu.size() != n) throw InputError("weight vector length does not match the matrix");
  EstimationError out;
  out.concepts = problem.unknowns();
  double total = 0.0;
  for (Index j : out.concepts) {
    double sum = 0.0;
    std::size_t count = 0;
    for (Index i = 0; i < n; ++i) {
      if (i == j || !m.present(j, i)) continue;
      sum += std::abs(mu[j] - mu[i] * m(j, i));
      ++count;
    }
    if (count == 0) throw InputError("concept " + std::to_string(j + 1) + " has no specified comparison");
    out.errors.push_back(sum / static_cast<double>(count));
    total += out.errors.back();
  }
  if (!out.concepts.empty()) out.mean = total / static_cast<double>(out.concepts.size());
  return out;
}

CopReport cop_check(const PcMatrix& matrix, std::span<const double> mu) {
  const std::size_t n = matrix.size();
  if (mu.size() != n) throw InputError("weight vector length does not match the matrix");
  for (double w : mu)
    if (!(w > 0.0)) throw InputError("COP needs strictly positive weights");

  struct Comparison {
    Index i, j;
    double value;
  };
  std::vector<Comparison> dominant;  // m_ij > 1
  std::vector<Comparison> weak;      // m_kl >= 1
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i == j || !matrix.present(i, j)) continue;
      const double v = matrix(i, j);
      if (v >= 1.0) weak.push_back({i, j, v});
      if (v > 1.0) dominant.push_back({i, j, v});
    }
  }

  CopReport report;
  for (const auto& a : dominant) {
    for (const auto& b : weak) {
      if (!(a.value > b.value)) continue;  // also excludes (i,j) == (k,l)
      ++report.quadruples_checked;
      const double ratio_ij = mu[a.i] / mu[a.j];
      const double ratio_kl = mu[b.i] / mu[b.j];
      const CopViolation v{a.i, a.j, b.i, b.j, ratio_ij, ratio_kl};
      const bool pop_ok = mu[a.i] > mu[a.j] && (!(b.value > 1.0) || mu[b.i] > mu[b.j]);
      if (!pop_ok) report.pop_violations.push_back(v);
      if (!(ratio_ij > ratio_kl)) report.poip_violations.push_back(v);
    }
  }
  return report;
}

}  // namespace hre
