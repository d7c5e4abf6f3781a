#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "purposedyn/error.hpp"
#include "purposedyn/worker_equilibrium.hpp"

using namespace purposedyn;

namespace {

const WorkerParams kS0{0.5, 0.5, 1.0, 1.0};
const MomentBundle kUnit{};

WorkerParams random_worker(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return WorkerParams{0.05 + 0.9 * u(rng), 0.05 + 2.0 * u(rng), std::exp(3.0 * u(rng) - 1.5),
                      std::exp(3.0 * u(rng) - 1.5)};
}

}  // namespace

TEST_CASE("work effort examples") {
  CHECK(optimal_work_effort(8.0, kS0) == 4.0);
  CHECK(optimal_work_effort(0.0, kS0) == 0.0);
  CHECK(optimal_work_effort(1.0, WorkerParams{0.3, 0.5, 0.6, 1.0}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(optimal_work_effort(-1.0, kS0), ValidationError);
}

TEST_CASE("common socialization examples") {
  CHECK(common_socialization(0.0, kS0, kUnit) == 0.0);
  CHECK(common_socialization(1.0, kS0, kUnit) == 0.5);
  const MomentBundle at8 = moment_bundle(Empirical::point_mass(8.0));
  CHECK(at8.m13 == doctest::Approx(2.0));
  CHECK(common_socialization(4.0, WorkerParams{0.25, 0.25, 1.0, 0.5}, at8) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(individual_socialization(8.0, 1.0, kS0, kUnit) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(socialization_aggregate(1.0, kS0, kUnit) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("individual meaning examples") {
  CHECK(individual_meaning(1.0, PeriodState{0.0, 0.0, 0.5}, kS0, kUnit) == 0.0);
  CHECK(individual_meaning(8.0, PeriodState{1.0, 0.0, 0.5}, kS0, kUnit) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(individual_meaning(1.0, PeriodState{0.0, 2.0, 0.5}, kS0, kUnit) == 1.0);
}

TEST_CASE("individual output examples") {
  CHECK(individual_output(1.0, PeriodState{0.0, 0.0, 0.5}, kS0, kUnit) == 0.5);
  CHECK(individual_output(0.0, PeriodState{1.0, 1.0, 0.5}, kS0, kUnit) == 0.0);
  CHECK(individual_output(1.0, PeriodState{1.0 / 3.0, 1.0 / 3.0, 0.5}, kS0, kUnit) ==
        doctest::Approx(5.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("worker utility examples") {
  CHECK(worker_utility(1.0, PeriodState{0.0, 0.0, 0.5}, kS0, kUnit) == doctest::Approx(0.125));
  CHECK(worker_utility(0.0, PeriodState{1.0, 1.0, 0.5}, kS0, kUnit) == 0.0);
  CHECK(worker_utility(1.0, PeriodState{1.0 / 3.0, 1.0 / 3.0, 0.5}, kS0, kUnit) ==
        doctest::Approx(5.0 / 12.0).epsilon(1e-14));
}

TEST_CASE("period state validation") {
  CHECK_THROWS_AS(PeriodState({-1.0, 0.0, 0.5}).validate(), ValidationError);
  CHECK_THROWS_AS(PeriodState({1.0, -1.0, 0.5}).validate(), ValidationError);
  CHECK_THROWS_AS(PeriodState({1.0, 0.0, 1.0}).validate(), ValidationError);
  CHECK_THROWS_WITH_AS(WorkerParams({1.2, 0.5, 1.0, 1.0}).validate(),
                       doctest::Contains("alpha"), ValidationError);
  CHECK_THROWS_AS(WorkerParams({0.5, 0.0, 1.0, 1.0}).validate(), ValidationError);
  CHECK_THROWS_AS(WorkerParams({0.5, 0.5, 0.0, 1.0}).validate(), ValidationError);
  CHECK_THROWS_AS(WorkerParams({0.5, 0.5, 1.0, -1.0}).validate(), ValidationError);
}

TEST_CASE("best-response oracle examples") {
  const PeriodState s{1.0, 0.0, 0.5};
  const double agg = socialization_aggregate(1.0, kS0, kUnit);

  const BestResponse at1 = best_response_oracle(1.0, agg, s, kS0);
  CHECK(at1.effort == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(at1.socialization == doctest::Approx(0.5).epsilon(1e-8));

  // A flat maximum limits golden-section search to about sqrt(machine
  // epsilon) relative accuracy; here the curvature makes that ~2e-8.
  const BestResponse at8 = best_response_oracle(8.0, agg, s, kS0);
  CHECK(at8.effort == doctest::Approx(4.0).epsilon(1e-7));
  CHECK(at8.socialization == doctest::Approx(2.0).epsilon(1e-7));

  const BestResponse no_purpose = best_response_oracle(2.0, agg, PeriodState{0.0, 0.0, 0.5}, kS0);
  CHECK(no_purpose.socialization == 0.0);
  CHECK(no_purpose.effort == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("closed-form choices zero the first-order conditions") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const WorkerParams p = random_worker(rng);
    const MomentBundle mb = moment_bundle(oracle::random_distribution(rng, oracle::DistKind::any));
    const double b = 0.1 + 5.0 * u(rng);
    const PeriodState s{0.01 + 3.0 * u(rng), 3.0 * u(rng), 0.95 * u(rng)};
    const double k = individual_socialization(b, s.r, p, mb);
    const double agg = socialization_aggregate(s.r, p, mb);
    CHECK(std::abs(effort_foc_residual(b, optimal_work_effort(b, p), p)) < 1e-10);
    CHECK(std::abs(socialization_foc_residual(b, k, agg, s, p)) < 1e-10);
  }
}

TEST_CASE("the closed-form profile is a Nash equilibrium") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const WorkerParams p = random_worker(rng);
    const TalentDistribution dist = oracle::random_distribution(rng, oracle::DistKind::empirical);
    const MomentBundle mb = moment_bundle(dist);
    const PeriodState s{0.01 + 3.0 * u(rng), 3.0 * u(rng), 0.95 * u(rng)};
    // Aggregate built worker by worker from the profile itself.
    const Empirical& law = dist.empirical();
    double agg = 0.0;
    for (std::size_t j = 0; j < law.support().size(); ++j) {
      agg += law.weights()[j] * std::sqrt(individual_socialization(law.support()[j], s.r, p, mb));
    }
    CHECK(agg == doctest::Approx(socialization_aggregate(s.r, p, mb)).epsilon(1e-12));
    for (double b : law.support()) {
      const BestResponse br = best_response_oracle(b, agg, s, p);
      CHECK(br.effort == doctest::Approx(optimal_work_effort(b, p)).epsilon(1e-6));
      CHECK(br.socialization ==
            doctest::Approx(individual_socialization(b, s.r, p, mb)).epsilon(1e-6));
      CHECK(worker_utility_at(b, br.effort, br.socialization, agg, s, p) ==
            doctest::Approx(worker_utility(b, s, p, mb)).epsilon(1e-10));
    }
  }
}

TEST_CASE("utility at the optimum beats zero own effort") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const WorkerParams p = random_worker(rng);
    const MomentBundle mb = moment_bundle(oracle::random_distribution(rng, oracle::DistKind::any));
    const double b = 0.1 + 5.0 * u(rng);
    const PeriodState s{3.0 * u(rng), 3.0 * u(rng), 0.95 * u(rng)};
    const double agg = socialization_aggregate(s.r, p, mb);
    CHECK(worker_utility(b, s, p, mb) >= worker_utility_at(b, 0.0, 0.0, agg, s, p));
  }
}

TEST_CASE("homogeneity in purpose") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const WorkerParams p = random_worker(rng);
    const MomentBundle mb = moment_bundle(oracle::random_distribution(rng, oracle::DistKind::any));
    const double r = 0.1 + u(rng);
    const double t = 0.5 + 3.0 * u(rng);
    const double b = 0.2 + 3.0 * u(rng);
    CHECK(common_socialization(t * r, p, mb) ==
          doctest::Approx(std::sqrt(t) * common_socialization(r, p, mb)).epsilon(1e-14));
    CHECK(individual_meaning(b, PeriodState{t * r, 0.0, 0.5}, p, mb) ==
          doctest::Approx(t * individual_meaning(b, PeriodState{r, 0.0, 0.5}, p, mb))
              .epsilon(1e-14));
  }
}

TEST_CASE("choices are nondecreasing in ability, purpose and past meaning") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const WorkerParams p = random_worker(rng);
    const MomentBundle mb = moment_bundle(oracle::random_distribution(rng, oracle::DistKind::any));
    const double lambda = 0.4;
    for (double b = 0.0; b < 4.0; b += 0.5) {
      for (double r = 0.0; r < 2.0; r += 0.5) {
        for (double m = 0.0; m < 2.0; m += 0.5) {
          const PeriodState s{r, m, lambda};
          for (const PeriodState& up :
               {PeriodState{r + 0.5, m, lambda}, PeriodState{r, m + 0.5, lambda}}) {
            CHECK(individual_socialization(b, up.r, p, mb) >= individual_socialization(b, r, p, mb));
            CHECK(individual_meaning(b, up, p, mb) >= individual_meaning(b, s, p, mb));
            CHECK(individual_output(b, up, p, mb) >= individual_output(b, s, p, mb));
          }
          CHECK(optimal_work_effort(b + 0.5, p) >= optimal_work_effort(b, p));
          CHECK(individual_socialization(b + 0.5, r, p, mb) >= individual_socialization(b, r, p, mb));
          CHECK(individual_meaning(b + 0.5, s, p, mb) >= individual_meaning(b, s, p, mb));
          CHECK(individual_output(b + 0.5, s, p, mb) >= individual_output(b, s, p, mb));
        }
      }
    }
  }
}
