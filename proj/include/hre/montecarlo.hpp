#pragma once

// Seeded experiment comparing the averaging and min-error heuristics as
// inconsistency grows.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "hre/matrix.hpp"

namespace hre {

struct ConsistentInstance {
  PcMatrix matrix;
  std::vector<double> weights;
};

/// Weights log-uniform over [low, high], m_ij = w_i / w_j.
ConsistentInstance generate_consistent(std::size_t n, std::uint64_t seed, double low, double high);

/// Multiplies each upper-triangle entry by exp(eps), eps ~ U[-noise, noise],
/// and sets the lower triangle to the exact reciprocals.
PcMatrix perturb(const PcMatrix& matrix, double noise_level, std::uint64_t seed);

struct ExperimentConfig {
  std::size_t n = 5;
  std::size_t trials = 100;
  std::vector<double> noise_levels;
  std::size_t reference_count = 1;
  std::uint64_t seed = 0;
  double weight_low = 1.0 / 9.0;
  double weight_high = 9.0;
};

struct TrialRecord {
  std::uint64_t seed;
  std::size_t n;
  double noise_level;
  double koczkodaj;
  std::optional<double> distance;  // max-norm between normalized vectors, when both solved
  bool both_solved;
};

/// Trial t of every noise level uses seed + t, so noise levels are compared
/// on the same underlying weights. Records are ordered by noise level, then
/// by trial. Throws InputError for an invalid configuration.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& config);

/// Header `seed,n,noise,koczkodaj,distance,both_solved`; `NA` marks a
/// missing distance. Numbers use the shortest round-trip form.
void write_csv(std::ostream& out, const std::vector<TrialRecord>& records);

struct NoiseSummary {
  double noise_level;
  std::size_t trials;
  std::size_t solved;
  double mean_koczkodaj;  // over all trials
  double mean_distance;   // over solved trials
};

/// One entry per distinct noise level in first-seen order.
std::vector<NoiseSummary> summarize(const std::vector<TrialRecord>& records);

/// Spearman rank correlation with average ranks for ties. Returns 0 when
/// either input is constant.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hre
