#include "hre/montecarlo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>

#include "hre/diagnostics.hpp"
#include "hre/error.hpp"
#include "hre/hre_solver.hpp"
#include "hre/min_error.hpp"

namespace hre {

namespace {

// Fixed bit-to-double mapping so sequences do not depend on the standard
// library's distribution implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

 private:
  std::mt19937_64 engine_;
};

constexpr std::uint64_t kNoiseStream = 0x9e3779b97f4a7c15ULL;

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) r[order[t]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

ConsistentInstance generate_consistent(std::size_t n, std::uint64_t seed, double low, double high) {
  if (n < 3) throw InputError("instances need at least three concepts");
  if (!(low > 0.0 && low < high)) throw InputError("weight range must satisfy 0 < low < high");
  Rng rng(seed);
  std::vector<double> w(n);
  for (auto& x : w) x = std::exp(rng.uniform(std::log(low), std::log(high)));
  PcMatrix m(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j) m.set(i, j, w[i] / w[j]);
  return {std::move(m), std::move(w)};
}

PcMatrix perturb(const PcMatrix& matrix, double noise_level, std::uint64_t seed) {
  if (!(noise_level >= 0.0)) throw InputError("noise level must be non-negative");
  if (noise_level == 0.0) return matrix;
  Rng rng(seed ^ kNoiseStream);
  PcMatrix out = matrix;
  for (Index i = 0; i < matrix.size(); ++i) {
    for (Index j = i + 1; j < matrix.size(); ++j) {
      const double eps = rng.uniform(-noise_level, noise_level);
      const double v = matrix(i, j) * std::exp(eps);
      out.set(i, j, v);
      out.set(j, i, 1.0 / v);
    }
  }
  return out;
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& config) {
  if (config.n < 3) throw InputError("n must be at least 3");
  if (config.reference_count < 1 || config.reference_count >= config.n)
    throw InputError("reference count must be between 1 and n-1");
  if (config.noise_levels.empty()) throw InputError("at least one noise level is required");
  for (double l : config.noise_levels)
    if (!(l >= 0.0) || !std::isfinite(l)) throw InputError("noise levels must be finite and non-negative");

  std::vector<TrialRecord> records;
  records.reserve(config.noise_levels.size() * config.trials);
  for (double noise : config.noise_levels) {
    for (std::size_t t = 0; t < config.trials; ++t) {
      const std::uint64_t seed = config.seed + t;
      const auto base = generate_consistent(config.n, seed, config.weight_low, config.weight_high);
      Problem problem{perturb(base.matrix, noise, seed), {}};
      for (Index i = 0; i < config.reference_count; ++i) problem.references.weights[i] = base.weights[i];

      TrialRecord rec{seed, config.n, noise, koczkodaj_index(problem.matrix).value_or(0.0), std::nullopt, false};
      std::optional<RankOutcome> averaging;
      try {
        averaging = hre_rank(problem, {.max_iterations = 10, .normalize = true});
      } catch (const SolverError&) {
      }
      const auto min_error = solve_min_error(prepare(problem).problem);
      if (averaging && averaging->path == SolutionPath::direct && min_error.status == MinErrorStatus::solved) {
        const auto a = averaging->weights.values();
        const auto b = min_error.weights->normalize().values();
        double d = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
        rec.distance = d;
        rec.both_solved = true;
      }
      records.push_back(rec);
    }
  }
  return records;
}

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "seed,n,noise,koczkodaj,distance,both_solved\n";
  for (const auto& r : records) {
    out << r.seed << ',' << r.n << ',' << shortest(r.noise_level) << ',' << shortest(r.koczkodaj) << ','
        << (r.distance ? shortest(*r.distance) : "NA") << ',' << (r.both_solved ? 1 : 0) << '\n';
  }
}

std::vector<NoiseSummary> summarize(const std::vector<TrialRecord>& records) {
  std::vector<NoiseSummary> out;
  for (const auto& r : records) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& s) { return s.noise_level == r.noise_level; });
    if (it == out.end()) it = out.insert(out.end(), NoiseSummary{r.noise_level, 0, 0, 0.0, 0.0});
    ++it->trials;
    it->mean_koczkodaj += r.koczkodaj;
    if (r.distance) {
      ++it->solved;
      it->mean_distance += *r.distance;
    }
  }
  for (auto& s : out) {
    s.mean_koczkodaj /= static_cast<double>(s.trials);
    if (s.solved > 0) s.mean_distance /= static_cast<double>(s.solved);
  }
  return out;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("spearman needs two equal-length samples");
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace hre
