#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hre/diagnostics.hpp"
#include "hre/error.hpp"
#include "hre/montecarlo.hpp"
#include "support.hpp"

using namespace hre;

TEST_CASE("generate_consistent") {
  const auto a = generate_consistent(6, 42, 1.0 / 9, 9);
  const auto b = generate_consistent(6, 42, 1.0 / 9, 9);
  CHECK(a.matrix == b.matrix);
  CHECK(a.weights == b.weights);
  CHECK(*koczkodaj_index(a.matrix) <= 1e-12);
  for (double w : a.weights) {
    CHECK(w >= 1.0 / 9);
    CHECK(w <= 9.0);
  }
  CHECK_THROWS_AS(generate_consistent(2, 1, 1.0 / 9, 9), InputError);
  CHECK_THROWS_AS(generate_consistent(4, 1, 2.0, 1.0), InputError);
}

TEST_CASE("generate_consistent regression fixture") {
  const auto c = generate_consistent(3, 1, 1.0 / 9, 9);
  const std::vector<double> pinned{0.20010551586603664, 0.20234304251212501, 0.80703872575316504};
  CHECK(c.weights == pinned);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) CHECK(c.matrix(i, j) == (i == j ? 1.0 : pinned[i] / pinned[j]));
}

TEST_CASE("perturb") {
  const auto base = generate_consistent(5, 11, 1.0 / 9, 9);
  CHECK(perturb(base.matrix, 0.0, 3) == base.matrix);
  const auto noisy = perturb(base.matrix, 0.5, 3);
  CHECK(noisy == perturb(base.matrix, 0.5, 3));
  for (Index i = 0; i < 5; ++i)
    for (Index j = 0; j < 5; ++j) CHECK(std::abs(noisy(i, j) * noisy(j, i) - 1.0) <= 1e-12);

  const double pinned[] = {0.49415465409226822, 0.59749576909582736, 0.74471045814349357};
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const double k = *koczkodaj_index(perturb(base.matrix, 0.5, seed));
    CHECK(k > 0.0);
    CHECK(k == doctest::Approx(pinned[seed - 1]).epsilon(1e-12));
  }
  CHECK_THROWS_AS(perturb(base.matrix, -0.1, 1), InputError);
}

TEST_CASE("zero-noise trials recover the truth") {
  ExperimentConfig config;
  config.trials = 50;
  config.noise_levels = {0.0};
  config.seed = 7;
  const auto records = run_experiment(config);
  REQUIRE(records.size() == 50);
  for (const auto& r : records) {
    CHECK(r.both_solved);
    REQUIRE(r.distance);
    CHECK(*r.distance <= 1e-8);
    CHECK(r.koczkodaj <= 1e-12);
  }
}

TEST_CASE("experiments are deterministic") {
  ExperimentConfig config;
  config.trials = 30;
  config.noise_levels = {0.1, 0.5};
  config.reference_count = 2;
  config.seed = 99;
  std::ostringstream a;
  std::ostringstream b;
  write_csv(a, run_experiment(config));
  write_csv(b, run_experiment(config));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("seed,n,noise,koczkodaj,distance,both_solved\n", 0) == 0);

  const auto records = run_experiment(config);
  CHECK(records[0].seed == 99);
  CHECK(records[30].seed == 99);
  CHECK(records[30].noise_level == 0.5);
}

TEST_CASE("distance grows with noise") {
  ExperimentConfig config;
  config.trials = 200;
  config.noise_levels = {0.05, 0.8};
  config.seed = 7;
  const auto summary = summarize(run_experiment(config));
  REQUIRE(summary.size() == 2);
  CHECK(summary[0].trials == 200);
  CHECK(summary[1].mean_distance > summary[0].mean_distance);
  CHECK(summary[1].mean_koczkodaj > summary[0].mean_koczkodaj);
}

TEST_CASE("write_csv marks missing distances") {
  std::ostringstream out;
  write_csv(out, {TrialRecord{3, 5, 0.25, 0.5, std::nullopt, false}, TrialRecord{4, 5, 0.25, 0.125, 0.0625, true}});
  CHECK(out.str() ==
        "seed,n,noise,koczkodaj,distance,both_solved\n"
        "3,5,0.25,0.5,NA,0\n"
        "4,5,0.25,0.125,0.0625,1\n");
}

TEST_CASE("invalid experiment configurations") {
  ExperimentConfig config;
  config.noise_levels = {0.1};
  config.reference_count = 5;
  CHECK_THROWS_AS(run_experiment(config), InputError);
  config.reference_count = 1;
  config.noise_levels = {};
  CHECK_THROWS_AS(run_experiment(config), InputError);
  config.noise_levels = {-1.0};
  CHECK_THROWS_AS(run_experiment(config), InputError);
}

TEST_CASE("spearman") {
  CHECK(spearman({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
  CHECK(spearman({1, 2, 3, 4}, {4, 3, 2, 1}) == doctest::Approx(-1.0));
  CHECK(spearman({1, 2, 3}, {5, 5, 5}) == 0.0);
  // Average ranks for ties: x ranks (1, 2.5, 2.5, 4) against y ranks (1, 2, 3, 4).
  CHECK(spearman({1, 2, 2, 3}, {1, 2, 3, 4}) == doctest::Approx(0.9486832980505138));
  CHECK_THROWS_AS(spearman({1}, {1}), InputError);
}
