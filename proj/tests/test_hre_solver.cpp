#include <doctest.h>

#include <cmath>

#include "hre/diagnostics.hpp"
#include "hre/error.hpp"
#include "hre/hre_solver.hpp"
#include "support.hpp"

using namespace hre;
using hre::test::Corpus;
using hre::test::within;

namespace {

std::vector<double> row(const DenseMatrix& m, std::size_t r) {
  std::vector<double> out(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) out[c] = m(r, c);
  return out;
}

// Complete 4x4 matrix whose unknowns c2 -> c3 -> c4 -> c2 form a cycle of
// strength a; every comparison with the reference c1 is indifference.
PcMatrix cycle_matrix(double a) {
  auto m = test::consistent_matrix({1, 1, 1, 1});
  auto pair = [&](Index i, Index j, double v) {
    m.set(i, j, v);
    m.set(j, i, 1.0 / v);
  };
  pair(1, 2, a);
  pair(2, 3, a);
  pair(3, 1, a);
  return m;
}

std::vector<double> values(const Iterate& it) {
  std::vector<double> out;
  for (const auto& v : it) out.push_back(*v);
  return out;
}

}  // namespace

TEST_CASE("averaging system of example 1") {
  const auto s = build_system(test::example1());
  REQUIRE(s.size() == 4);
  CHECK(s.unknown_index_map == std::vector<Index>{1, 2, 3, 4});
  CHECK(within(row(s.coefficients, 0), {1, -0.5, -1, -2.25}, 1e-12));
  CHECK(within(s.constants, {0.125, 0.083, 0.05, 0.028}, 0.001));
  const auto d = check_convergence(s);
  CHECK_FALSE(d.row_dominant);
}

TEST_CASE("averaging system of example 2") {
  const auto s = build_system(test::example2());
  CHECK(within(row(s.coefficients, 0), {1, -0.156, -0.125}, 0.001));
  CHECK(within(row(s.coefficients, 1), {-0.4, 1, -0.333}, 0.001));
  CHECK(within(row(s.coefficients, 2), {-0.5, -0.187, 1}, 0.001));
  CHECK(within(s.constants, {1.75, 1.0, 0.812}, 0.001));

  const auto x = solve_linear(s);
  REQUIRE(x);
  const double a[3][3] = {{1, -5.0 / 32, -1.0 / 8}, {-0.4, 1, -1.0 / 3}, {-0.5, -3.0 / 16, 1}};
  const double b[3] = {1.75, 1.0, 0.8125};
  CHECK(test::max_abs_diff(*x, test::cramer3(a, b)) <= 1e-12);
  CHECK(std::abs((*x)[0] - 2.527) <= 0.001);
  CHECK(std::abs((*x)[2] - 2.616) <= 0.001);
}

TEST_CASE("averaging system of restored example 3") {
  auto p = test::example3();
  p.matrix = restore_reciprocity(p.matrix);
  const auto s = build_system(p);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c)
      if (r != c) CHECK(std::abs(s.coefficients(r, c) + 0.333) <= 0.001);
  CHECK(within(s.constants, {0.333, 0.333, 0.471}, 0.001));
  CHECK(check_convergence(s).row_dominant);
}

TEST_CASE("build_system rejects incomplete or reference-free problems") {
  CHECK_THROWS_AS(build_system(test::example4()), InputError);
  CHECK_THROWS_AS(build_system(Problem{test::example1_matrix(), {}}), InputError);
}

TEST_CASE("synthesize interleaves solved and reference weights") {
  const auto s = synthesize(std::vector<double>{2.527, 2.88, 2.616}, test::example2());
  CHECK(s.weights.values() == std::vector<double>{2.527, 5.0, 7.0, 2.88, 2.616});
  CHECK(within(s.normalized.values(), {0.126, 0.249, 0.349, 0.144, 0.13}, 0.001));
  CHECK_THROWS_AS(synthesize(std::vector<double>{2.5, -1.0, 2.6}, test::example2()), SolverError);

  Problem all_known{test::consistent_matrix({1, 2}), {{{0, 1.0}, {1, 2.0}}}};
  CHECK(synthesize({}, all_known).weights.values() == std::vector<double>{1.0, 2.0});
}

TEST_CASE("Jacobi iteration") {
  SUBCASE("example 1 converges to the direct solution") {
    const auto run = jacobi_iterate(test::example1(), 1000);
    CHECK(run.converged);
    const auto direct = hre_rank(test::example1());
    CHECK(test::max_abs_diff(values(run.iterates.back()), direct.unnormalized.values()) <= 1e-8);
    CHECK(within(test::normalized(values(run.iterates.back())), {0.368, 0.311, 0.182, 0.11, 0.028}, 0.001));
  }
  SUBCASE("first step uses the references only") {
    const auto run = jacobi_iterate(test::example1(), 1);
    REQUIRE(run.iterates.size() == 1);
    CHECK(values(run.iterates[0]) == std::vector<double>{1.0, 0.5, 1.0 / 3, 0.2, 1.0 / 9});
  }
  SUBCASE("example 4 converges") {
    auto p = test::example4();
    p.matrix = restore_reciprocity(p.matrix);
    const auto run = jacobi_iterate(p, 1000);
    CHECK(run.converged);
    CHECK(within(test::normalized(values(run.iterates.back())), {0.369, 0.338, 0.154, 0.138}, 0.001));
  }
  SUBCASE("consistent matrix is a fixed point after one step") {
    const std::vector<double> w{2, 1, 0.25, 4};
    Problem p{test::consistent_matrix(w), {{{0, 2.0}}}};
    const auto run = jacobi_iterate(p, 1000);
    CHECK(run.converged);
    CHECK(run.iterates.size() == 2);
    CHECK(test::max_abs_diff(values(run.iterates.front()), w) <= 1e-12);
  }
  SUBCASE("divergence stops the run") {
    auto m = cycle_matrix(20.0);
    m.set(0, 2, std::nullopt);
    m.set(2, 0, std::nullopt);
    m.set(0, 3, std::nullopt);
    m.set(3, 0, std::nullopt);
    const auto run = jacobi_iterate(Problem{m, {{{0, 1.0}}}}, 1000);
    CHECK(run.diverged);
    CHECK_FALSE(run.converged);
    CHECK(run.iterates.size() == 13);
  }
  SUBCASE("unreachable concepts are rejected") {
    Problem p{PcMatrix(3), {{{0, 1.0}}}};
    CHECK_THROWS_AS(jacobi_iterate(p, 10), InputError);
  }
}

TEST_CASE("select_best_iterate") {
  PcMatrix m(2);
  m.set(1, 0, 2.0);
  m.set(0, 1, 0.5);
  const Problem p{m, {{{0, 1.0}}}};

  SUBCASE("argmin of the estimation error") {
    const std::vector<Iterate> its{{1.0, 2.4}, {1.0, 2.2}, {1.0, 2.3}};
    const auto best = select_best_iterate(its, p);
    CHECK(best.index == 1);
    CHECK(best.error == doctest::Approx(0.2));
    CHECK(best.weights.values() == std::vector<double>{1.0, 2.2});
  }
  SUBCASE("single admissible iterate") {
    const std::vector<Iterate> its{{1.0, std::nullopt}, {1.0, -3.0}, {1.0, 7.0}};
    CHECK(select_best_iterate(its, p).index == 2);
  }
  SUBCASE("no admissible iterate") {
    const std::vector<Iterate> its{{1.0, std::nullopt}, {1.0, 0.0}};
    CHECK_THROWS_AS(select_best_iterate(its, p), SolverError);
  }
  SUBCASE("example 1 sequence") {
    const auto run = jacobi_iterate(test::example1(), 10);
    std::size_t argmin = 0;
    double lowest = INFINITY;
    for (std::size_t q = 0; q < run.iterates.size(); ++q) {
      const double e = test::oracle_estimation_error(test::example1(), values(run.iterates[q]));
      if (e < lowest) {
        lowest = e;
        argmin = q;
      }
    }
    const auto best = select_best_iterate(run.iterates, test::example1());
    CHECK(best.index == argmin);
    CHECK(best.index == 2);
    CHECK(best.error == doctest::Approx(lowest).epsilon(1e-14));
  }
}

TEST_CASE("hre_rank on the examples") {
  SUBCASE("example 1") {
    const auto r = hre_rank(test::example1(), {.normalize = true});
    CHECK(r.path == SolutionPath::direct);
    CHECK(r.weights.normalized());
    CHECK(within(r.weights.values(), {0.368, 0.311, 0.182, 0.11, 0.028}, 0.001));
    CHECK(r.unnormalized[0] == 1.0);
    CHECK_FALSE(r.convergence_ok);
    CHECK(r.determinant_ok);
    CHECK(r.admissible);
    CHECK(r.error == doctest::Approx(test::oracle_estimation_error(test::example1(), r.unnormalized.values())));
  }
  SUBCASE("example 2") {
    const auto r = hre_rank(test::example2(), {.normalize = true});
    CHECK(r.path == SolutionPath::direct);
    CHECK(r.unnormalized[1] == 5.0);
    CHECK(r.unnormalized[2] == 7.0);
    CHECK(within(r.weights.values(), {0.126, 0.249, 0.349, 0.144, 0.13}, 0.001));
  }
  SUBCASE("example 3") {
    const auto r = hre_rank(test::example3(), {.normalize = true});
    CHECK(r.path == SolutionPath::direct);
    CHECK(r.convergence_ok);
    CHECK(within(r.weights.values(), {0.227, 0.25, 0.25, 0.273}, 0.001));
  }
  SUBCASE("example 4") {
    const auto r = hre_rank(test::example4(), {.normalize = true});
    CHECK(r.path == SolutionPath::jacobi);
    CHECK(r.convergence_ok);
    CHECK_FALSE(r.determinant_ok);
    CHECK(within(r.weights.values(), {0.369, 0.338, 0.154, 0.138}, 0.001));
    CHECK(std::abs(r.weights[0] / r.weights[2] - 2.396) <= 0.005);
    CHECK(std::abs(r.weights[3] / r.weights[0] - 0.374) <= 0.005);
  }
}

TEST_CASE("hre_rank falls back to the min-error heuristic") {
  const double a = 5.0;
  const Problem p{cycle_matrix(a), {{{0, 1.0}}}};
  const auto sys = build_system(p);
  const auto direct = solve_linear(sys);
  REQUIRE(direct);
  CHECK((*direct)[0] < 0.0);

  const auto r = hre_rank(p);
  CHECK(r.path == SolutionPath::min_error);
  CHECK(r.determinant_ok);
  CHECK_FALSE(r.admissible);
  // By symmetry every unknown takes t with (3 + a^2 + a^-2 - 2a - 2/a) t = 1.
  const double t = 1.0 / (3.0 + a * a + 1.0 / (a * a) - 2.0 * a - 2.0 / a);
  CHECK(within(r.unnormalized.values(), {1.0, t, t, t}, 1e-12));
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("hre_rank falls back to the best early iterate") {
  auto m = cycle_matrix(20.0);
  m.set(0, 2, std::nullopt);
  m.set(2, 0, std::nullopt);
  m.set(0, 3, std::nullopt);
  m.set(3, 0, std::nullopt);
  const Problem p{m, {{{0, 1.0}}}};

  const auto run = jacobi_iterate(p, 10);
  double lowest = INFINITY;
  std::vector<double> expected;
  for (const auto& it : run.iterates) {
    if (!it[2]) continue;
    const auto v = values(it);
    const double e = test::oracle_estimation_error(p, v);
    if (e < lowest) {
      lowest = e;
      expected = v;
    }
  }

  const auto r = hre_rank(p);
  CHECK(r.path == SolutionPath::best_iterate);
  CHECK_FALSE(r.convergence_ok);
  CHECK(r.unnormalized.values() == expected);
  CHECK(r.error == doctest::Approx(lowest));

  const auto short_run = hre_rank(p, {.max_iterations = 2});
  CHECK(short_run.iterations_used == 2);
  CHECK(short_run.unnormalized.values() == std::vector<double>{1.0, 1.0, 0.05, 20.0});
}

TEST_CASE("hre_rank with every concept known returns the references") {
  const Problem p{test::consistent_matrix({1, 2, 3}), {{{0, 1.0}, {1, 2.0}, {2, 3.0}}}};
  const auto r = hre_rank(p);
  CHECK(r.unnormalized.values() == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(r.error == 0.0);
}

TEST_CASE("hre_rank properties over a random corpus") {
  Corpus corpus(1337);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = corpus.pick(3, 8);
    const auto w = corpus.weights(n);
    const std::size_t refs = corpus.pick(1, n - 1);

    Problem consistent{test::consistent_matrix(w), {}};
    for (Index r = 0; r < refs; ++r) consistent.references.weights[r] = w[r];
    const auto exact = hre_rank(consistent);
    CHECK(exact.path == SolutionPath::direct);
    CHECK(test::max_rel_diff(exact.unnormalized.values(), w) <= 1e-9);
    CHECK(exact.error <= 1e-9);

    Problem noisy{corpus.noisy(w, 0.3), consistent.references};
    const auto base = hre_rank(noisy, {.normalize = true});
    for (const auto& [ref, weight] : noisy.references.weights) CHECK(base.unnormalized[ref] == weight);
    for (double v : base.unnormalized.values()) CHECK(v > 0.0);

    const double lambda = corpus.uniform(0.01, 100.0);
    Problem scaled = noisy;
    for (auto& [ref, weight] : scaled.references.weights) weight *= lambda;
    CHECK(test::max_abs_diff(hre_rank(scaled, {.normalize = true}).weights.values(), base.weights.values()) <= 1e-10);

    const auto p = corpus.permutation(n);
    const auto permuted = hre_rank(test::permute(noisy, p), {.normalize = true});
    CHECK(test::max_abs_diff(permuted.weights.values(), test::permute(base.weights.values(), p)) <= 1e-10);

    for (const auto& it : jacobi_iterate(noisy, 5).iterates)
      for (const auto& v : it)
        if (v) CHECK(*v > 0.0);
  }
}
