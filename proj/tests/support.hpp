#pragma once

// Shared fixtures and independent oracles for the test binaries.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hre/matrix.hpp"

namespace hre::test {

inline PcMatrix example1_matrix() {
  return PcMatrix::from_dense({{1, 2, 3, 5, 9},
                               {1.0 / 2, 1, 2, 4, 9},
                               {1.0 / 3, 1.0 / 2, 1, 2, 8},
                               {1.0 / 5, 1.0 / 4, 1.0 / 2, 1, 7},
                               {1.0 / 9, 1.0 / 9, 1.0 / 8, 1.0 / 7, 1}});
}

inline PcMatrix example2_matrix() {
  return PcMatrix::from_dense({{1, 3.0 / 5, 4.0 / 7, 5.0 / 8, 1.0 / 2},
                               {5.0 / 3, 1, 5.0 / 7, 5.0 / 2, 10.0 / 3},
                               {7.0 / 4, 7.0 / 5, 1, 7.0 / 2, 4},
                               {8.0 / 5, 2.0 / 5, 2.0 / 7, 1, 4.0 / 3},
                               {2, 3.0 / 10, 1.0 / 4, 3.0 / 4, 1}});
}

inline PcMatrix example3_matrix() {
  return PcMatrix::from_dense({{1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}, {2, 1, 1, 1}});
}

inline PcMatrix example4_matrix() {
  constexpr std::optional<double> none;
  return PcMatrix::from_rows({{1.0, 1.0, none, none},
                              {none, 1.0, 2.0, none},
                              {none, none, 1.0, none},
                              {1.0 / 3, none, 1.0, 1.0}});
}

inline Problem example1() { return Problem{example1_matrix(), {{{0, 1.0}}}}; }
inline Problem example2() { return Problem{example2_matrix(), {{{1, 5.0}, {2, 7.0}}}}; }
inline Problem example3() { return Problem{example3_matrix(), {{{0, 1.0}}}}; }
inline Problem example4() { return Problem{example4_matrix(), {{{0, 1.0}}}}; }

inline PcMatrix consistent_matrix(const std::vector<double>& w) {
  PcMatrix m(w.size());
  for (Index i = 0; i < w.size(); ++i)
    for (Index j = 0; j < w.size(); ++j) m.set(i, j, i == j ? 1.0 : w[i] / w[j]);
  return m;
}

inline std::vector<double> normalized(std::vector<double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  for (double& x : v) x /= s;
  return v;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]) / std::abs(b[i]));
  return d;
}

inline bool within(const std::vector<double>& actual, const std::vector<double>& expected, double tol) {
  if (actual.size() != expected.size()) return false;
  return max_abs_diff(actual, expected) <= tol;
}

/// Deterministic generator for the property corpora.
class Corpus {
 public:
  explicit Corpus(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t pick(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }

  std::vector<double> weights(std::size_t n) {
    std::vector<double> w(n);
    for (double& x : w) x = std::exp(uniform(std::log(1.0 / 9.0), std::log(9.0)));
    return w;
  }

  /// Reciprocal matrix with upper entries w_i/w_j * exp(U[-noise, noise]).
  PcMatrix noisy(const std::vector<double>& w, double noise) {
    PcMatrix m(w.size());
    for (Index i = 0; i < w.size(); ++i)
      for (Index j = i + 1; j < w.size(); ++j) {
        const double v = w[i] / w[j] * std::exp(uniform(-noise, noise));
        m.set(i, j, v);
        m.set(j, i, 1.0 / v);
      }
    return m;
  }

  /// Positive matrix with independent entries in [1/9, 9], not reciprocal.
  PcMatrix arbitrary(std::size_t n) {
    PcMatrix m(n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (i != j) m.set(i, j, std::exp(uniform(std::log(1.0 / 9.0), std::log(9.0))));
    return m;
  }

  std::vector<Index> permutation(std::size_t n) {
    std::vector<Index> p(n);
    for (Index i = 0; i < n; ++i) p[i] = i;
    std::shuffle(p.begin(), p.end(), rng_);
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Matrix with concept p[i] of the result equal to concept i of the input.
inline PcMatrix permute(const PcMatrix& m, const std::vector<Index>& p) {
  PcMatrix out(m.size());
  for (Index i = 0; i < m.size(); ++i)
    for (Index j = 0; j < m.size(); ++j) out.set(p[i], p[j], m.entry(i, j));
  return out;
}

inline Problem permute(const Problem& problem, const std::vector<Index>& p) {
  Problem out{permute(problem.matrix, p), {}};
  for (const auto& [i, w] : problem.references.weights) out.references.weights[p[i]] = w;
  return out;
}

inline std::vector<double> permute(const std::vector<double>& v, const std::vector<Index>& p) {
  std::vector<double> out(v.size());
  for (Index i = 0; i < v.size(); ++i) out[p[i]] = v[i];
  return out;
}

/// Mean absolute estimation error over the unknowns, written out from the
/// definition without any library helper.
inline double oracle_estimation_error(const Problem& problem, const std::vector<double>& mu) {
  const std::size_t n = problem.size();
  double total = 0.0;
  std::size_t unknowns = 0;
  for (Index j = 0; j < n; ++j) {
    if (problem.is_reference(j)) continue;
    double sum = 0.0;
    std::size_t count = 0;
    for (Index i = 0; i < n; ++i) {
      if (i == j || !problem.matrix.present(j, i)) continue;
      sum += std::abs(mu[j] - mu[i] * problem.matrix(j, i));
      ++count;
    }
    total += sum / static_cast<double>(count);
    ++unknowns;
  }
  return unknowns == 0 ? 0.0 : total / static_cast<double>(unknowns);
}

/// 3x3 solve by Cramer's rule.
inline std::vector<double> cramer3(const double a[3][3], const double b[3]) {
  auto det = [](double m00, double m01, double m02, double m10, double m11, double m12, double m20, double m21,
                double m22) {
    return m00 * (m11 * m22 - m12 * m21) - m01 * (m10 * m22 - m12 * m20) + m02 * (m10 * m21 - m11 * m20);
  };
  const double d = det(a[0][0], a[0][1], a[0][2], a[1][0], a[1][1], a[1][2], a[2][0], a[2][1], a[2][2]);
  return {det(b[0], a[0][1], a[0][2], b[1], a[1][1], a[1][2], b[2], a[2][1], a[2][2]) / d,
          det(a[0][0], b[0], a[0][2], a[1][0], b[1], a[1][2], a[2][0], b[2], a[2][2]) / d,
          det(a[0][0], a[0][1], b[0], a[1][0], a[1][1], b[1], a[2][0], a[2][1], b[2]) / d};
}

inline std::string data_path(const std::string& name) { return std::string(HRE_TEST_DATA_DIR) + "/" + name; }

}  // namespace hre::test
