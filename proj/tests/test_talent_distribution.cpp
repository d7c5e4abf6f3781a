#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "oracles.hpp"
#include "purposedyn/error.hpp"
#include "purposedyn/talent_distribution.hpp"

using namespace purposedyn;

namespace {

const double kExponents[] = {1.0 / 3.0, 2.0 / 3.0, 1.0, 4.0 / 3.0, 2.0};

}  // namespace

TEST_CASE("fractional moments of simple laws") {
  CHECK(fractional_moment(Lognormal{0.0, 0.0, 1.0}, 2.0) == doctest::Approx(1.0).epsilon(1e-15));

  const Empirical two({1.0, 2.0}, {0.5, 0.5});
  CHECK(fractional_moment(two, 0.5) == doctest::Approx((1.0 + std::sqrt(2.0)) / 2.0).epsilon(1e-15));
  CHECK(fractional_moment(two, 0.5) == doctest::Approx(1.2071068).epsilon(1e-7));
}

TEST_CASE("lognormal moment matches a 10^7-draw Monte Carlo estimate") {
  const Lognormal d{0.0, 0.18, 1.0};
  const double exact = fractional_moment(d, 1.0 / 3.0);
  CHECK(exact == doctest::Approx(std::exp(0.01)).epsilon(1e-15));
  const auto mc = oracle::lognormal_moment_mc(d, 1.0 / 3.0, 10'000'000, 17);
  CHECK(std::abs(mc.mean - exact) < 3.0 * mc.se);
}

TEST_CASE("moment bundle examples") {
  const MomentBundle unit = moment_bundle(Empirical::point_mass(1.0));
  CHECK(unit.m13 == 1.0);
  CHECK(unit.m23 == 1.0);
  CHECK(unit.m1 == 1.0);
  CHECK(unit.m43 == 1.0);
  CHECK(unit.m2 == 1.0);

  const MomentBundle wide = moment_bundle(Lognormal{0.0, 1.0, 1.0});
  CHECK(wide.m2 == doctest::Approx(7.389056).epsilon(1e-7));
  const auto mc = oracle::lognormal_moment_mc(Lognormal{0.0, 1.0, 1.0}, 2.0, 10'000'000, 23);
  CHECK(std::abs(mc.mean - wide.m2) < 3.0 * mc.se);

  const MomentBundle hand = moment_bundle(Empirical({1.0, 3.0}, {0.5, 0.5}));
  CHECK(hand.m2 == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(hand.m1 == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("the power field composes through b^power") {
  const Lognormal d{1.0, 0.2, 1.0 / 3.0};
  // b^{1/3} ~ exp(N(1, 0.2)), so E[b^p] = exp(3p + 0.5*0.2*9p^2).
  for (double p : kExponents) {
    CHECK(fractional_moment(d, p) ==
          doctest::Approx(std::exp(3.0 * p + 0.5 * 0.2 * 9.0 * p * p)).epsilon(1e-14));
  }
}

TEST_CASE("random lognormal moments agree with Monte Carlo within 4 standard errors") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 6; ++trial) {
    const Lognormal d = oracle::random_distribution(rng, oracle::DistKind::lognormal).lognormal();
    for (double p : kExponents) {
      const auto mc = oracle::lognormal_moment_mc(d, p, 1'000'000, 1000 + trial);
      CAPTURE(d.mu);
      CAPTURE(d.sigma2);
      CAPTURE(d.power);
      CAPTURE(p);
      CHECK(std::abs(mc.mean - fractional_moment(d, p)) < 4.0 * mc.se + 1e-15);
    }
  }
}

TEST_CASE("empirical moments equal the weighted power sum") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Empirical d = oracle::random_empirical(rng, 5, 0.1, 4.0);
    for (double p : kExponents) {
      CHECK(fractional_moment(d, p) ==
            doctest::Approx(oracle::weighted_power_sum(d, p)).epsilon(1e-14));
    }
  }
}

TEST_CASE("construction rejects invalid laws") {
  CHECK_THROWS_AS(Empirical({1.0, 2.0}, {0.5, 0.4}), ValidationError);
  CHECK_THROWS_WITH_AS(Empirical({1.0, 2.0}, {0.45, 0.45}),
                       doctest::Contains("weights must sum to 1"), ValidationError);
  CHECK_THROWS_AS(Empirical({2.0, 1.0}, {0.5, 0.5}), ValidationError);
  CHECK_THROWS_AS(Empirical({1.0, 1.0}, {0.5, 0.5}), ValidationError);
  CHECK_THROWS_AS(Empirical({0.0, 1.0}, {0.5, 0.5}), ValidationError);
  CHECK_THROWS_AS(Empirical({1.0}, {1.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(Empirical({}, {}), ValidationError);
  CHECK_THROWS_AS(Empirical({1.0, 2.0}, {1.5, -0.5}), ValidationError);
  CHECK_THROWS_AS(TalentDistribution(Lognormal{0.0, -0.1, 1.0}), ValidationError);
  CHECK_THROWS_AS(TalentDistribution(Lognormal{0.0, 0.1, 0.0}), ValidationError);
  CHECK_THROWS_AS(fractional_moment(Empirical::point_mass(1.0), 0.0), ValidationError);
  CHECK_NOTHROW(Empirical({1.0, 2.0, 3.0}, {0.1, 0.2, 0.7}));
}

TEST_CASE("from_samples merges repeated values") {
  const std::vector<double> xs = {3.0, 1.0, 3.0, 2.0};
  const Empirical d = Empirical::from_samples(xs);
  CHECK(d.support() == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(d.weights() == std::vector<double>{0.25, 0.25, 0.5});
}

TEST_CASE("condition A3 is reported and enforced only on request") {
  SUBCASE("point mass sits on the boundary") {
    CHECK(moment_bundle(Empirical::point_mass(2.0)).a3_slack() == doctest::Approx(0.0));
    CHECK_THROWS_WITH_AS(moment_bundle(Empirical::point_mass(2.0), A3Policy::enforce),
                         doctest::Contains("condition A3 violated"), ValidationError);
  }
  SUBCASE("dispersed laws violate it") {
    CHECK_NOTHROW(moment_bundle(Lognormal{0.0, 0.5, 1.0}));
    CHECK_THROWS_WITH_AS(moment_bundle(Lognormal{0.0, 0.5, 1.0}, A3Policy::enforce),
                         doctest::Contains("condition A3 violated"), ValidationError);
  }
  SUBCASE("slack is never positive") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 500; ++i) {
      const MomentBundle mb = moment_bundle(oracle::random_distribution(rng, oracle::DistKind::any));
      CHECK(mb.a3_slack() <= 1e-12 * mb.m1);
    }
  }
}

TEST_CASE("moment bundles are log-convex in the exponent") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 500; ++i) {
    const MomentBundle mb = moment_bundle(oracle::random_distribution(rng, oracle::DistKind::any));
    CHECK(mb.m23 * mb.m23 <= mb.m13 * mb.m1 * (1.0 + 1e-10));
    CHECK(mb.m1 * mb.m1 <= mb.m23 * mb.m43 * (1.0 + 1e-10));
  }
  MomentBundle bad;
  bad.m23 = 2.0;
  CHECK_THROWS_WITH_AS(validated_bundle(bad), doctest::Contains("log-convexity"), ValidationError);
  bad = MomentBundle{};
  bad.m1 = 0.0;
  CHECK_THROWS_AS(validated_bundle(bad), ValidationError);
}

TEST_CASE("mean-preserving spread examples") {
  const Lognormal base{0.0, 0.5, 1.0};
  CHECK(mean_preserving_spread(base, 0.0) == base);

  const Lognormal wider = mean_preserving_spread(base, 0.5);
  CHECK(wider.mu == -0.25);
  CHECK(wider.sigma2 == 1.0);
  CHECK(wider.power == 1.0);
  CHECK(fractional_moment(base, 1.0) == doctest::Approx(std::exp(0.25)).epsilon(1e-15));
  CHECK(fractional_moment(wider, 1.0) == doctest::Approx(std::exp(0.25)).epsilon(1e-15));

  const Lognormal cube{1.0, 0.2, 1.0 / 3.0};
  const Lognormal cube_wide = mean_preserving_spread(cube, 0.1);
  CHECK(fractional_moment(cube, 1.0 / 3.0) == doctest::Approx(std::exp(1.1)).epsilon(1e-12));
  CHECK(fractional_moment(cube_wide, 1.0 / 3.0) == doctest::Approx(std::exp(1.1)).epsilon(1e-12));

  CHECK_THROWS_AS(mean_preserving_spread(TalentDistribution(Empirical::point_mass(1.0)), 0.1),
                  UnsupportedError);
  CHECK_THROWS_AS(mean_preserving_spread(base, -0.1), ValidationError);
}

TEST_CASE("spreads raise moments below the lognormal power and lower those above") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Lognormal d = oracle::random_distribution(rng, oracle::DistKind::lognormal).lognormal();
    const Lognormal w = mean_preserving_spread(d, u(rng));
    CHECK(fractional_moment(w, d.power) ==
          doctest::Approx(fractional_moment(d, d.power)).epsilon(1e-12));
    for (double p : kExponents) {
      const double q = p / d.power;
      if (q < 1.0 - 1e-12) CHECK(fractional_moment(w, p) < fractional_moment(d, p));
      if (q > 1.0 + 1e-12) CHECK(fractional_moment(w, p) > fractional_moment(d, p));
    }
  }
}

TEST_CASE("first-order dominance examples") {
  const Empirical x({1.0, 2.0}, {0.5, 0.5});
  CHECK(fosd_check(x, Empirical({2.0, 3.0}, {0.5, 0.5})) == Dominance::y_dominates);
  CHECK(fosd_check(Empirical({2.0, 3.0}, {0.5, 0.5}), x) == Dominance::x_dominates);
  CHECK(fosd_check(x, x) == Dominance::equal);
  CHECK(fosd_check(Empirical({1.0, 4.0}, {0.5, 0.5}), Empirical({2.0, 3.0}, {0.5, 0.5})) ==
        Dominance::incomparable);
}

TEST_CASE("second-order dominance examples") {
  CHECK(sosd_check(Empirical({1.0, 3.0}, {0.5, 0.5}), Empirical::point_mass(2.0)) ==
        Dominance::y_dominates);
  const Empirical x({1.0, 2.0}, {0.5, 0.5});
  CHECK(sosd_check(x, x) == Dominance::equal);
  CHECK(sosd_check(Empirical({2.0, 3.0}, {0.5, 0.5}), Empirical({1.0, 2.0}, {0.5, 0.5})) ==
        Dominance::x_dominates);
  CHECK(to_string(Dominance::incomparable) == std::string("incomparable"));
}

TEST_CASE("dominance checks agree with brute-force CDF comparison") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const Empirical x = oracle::random_empirical(rng, 1 + static_cast<int>(u(rng) * 4), 0.5, 3.0);
    const Empirical y = u(rng) < 0.3 ? x.shifted(u(rng))
                                     : oracle::random_empirical(rng, 1 + static_cast<int>(u(rng) * 4), 0.5, 3.0);
    CHECK(fosd_check(x, y) == oracle::fosd_brute(x, y));
    CHECK(sosd_check(x, y) == oracle::sosd_brute(x, y));
  }
}

// Moment orderings over constructed dominance pairs.
TEST_CASE("FOSD raises every positive moment") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Empirical x = oracle::random_empirical(rng, 4, 0.3, 3.0);
    // Each atom moves up by its own amount, so y dominates without a common shift.
    std::vector<std::pair<double, double>> atoms;
    for (std::size_t k = 0; k < x.support().size(); ++k) {
      atoms.emplace_back(x.support()[k] + (u(rng) < 0.2 ? 0.0 : u(rng)), x.weights()[k]);
    }
    const Empirical y = oracle::law_from_atoms(atoms);
    const Dominance v = fosd_check(x, y);
    REQUIRE((v == Dominance::y_dominates || v == Dominance::equal));
    for (int k = 1; k <= 30; ++k) {
      const double p = 0.1 * k;
      CHECK(fractional_moment(y, p) >= fractional_moment(x, p) - 1e-12);
    }
  }
}

TEST_CASE("SOSD orders concave and convex moments") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Empirical y = oracle::random_empirical(rng, 3, 0.5, 3.0);
    // x splits one atom of y into a symmetric pair: a mean-preserving spread.
    const std::size_t k = static_cast<std::size_t>(u(rng) * 3.0) % 3;
    const double v = y.support()[k];
    const double s = v * (0.05 + 0.9 * u(rng));
    std::vector<std::pair<double, double>> atoms;
    for (std::size_t j = 0; j < y.support().size(); ++j) {
      if (j == k) {
        atoms.emplace_back(v - s, 0.5 * y.weights()[j]);
        atoms.emplace_back(v + s, 0.5 * y.weights()[j]);
      } else {
        atoms.emplace_back(y.support()[j], y.weights()[j]);
      }
    }
    const Empirical x = oracle::law_from_atoms(atoms);
    REQUIRE(sosd_check(x, y) == Dominance::y_dominates);
    for (int j = 1; j < 10; ++j) {
      const double p = 0.1 * j;
      CHECK(fractional_moment(y, p) >= fractional_moment(x, p) - 1e-12);
    }
    for (int j = 11; j <= 30; ++j) {
      const double p = 0.1 * j;
      CHECK(fractional_moment(y, p) <= fractional_moment(x, p) + 1e-12);
    }
  }
}
