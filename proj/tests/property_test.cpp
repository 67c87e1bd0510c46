#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support/generators.hpp"
#include "support/oracle.hpp"
#include "tacfit/distance.hpp"
#include "tacfit/evaluation.hpp"
#include "tacfit/recommender.hpp"

using namespace tacfit;

namespace {

WeightVector random_weights(std::mt19937_64& rng, const AttributeMask& mask) {
  const RankRequest r = testgen::random_request(rng);
  GapEstimate g{std::uniform_real_distribution<double>(-1, 1)(rng),
                std::uniform_real_distribution<double>(-1, 1)(rng)};
  const double e = std::uniform_real_distribution<double>(0, 1)(rng);
  return normalize_weights(compute_multipliers(e, g, r.state, r.params), mask);
}

}  // namespace

TEST(MetricProperties, AdaptedDistanceIsAMetric) {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 10000; ++trial) {
    const AttributeMask mask = testgen::random_mask(rng);
    const PartialAttributeVector x = project(testgen::random_vector(rng), mask);
    const PartialAttributeVector y = project(testgen::random_vector(rng), mask);
    const PartialAttributeVector z = project(testgen::random_vector(rng), mask);
    const WeightVector w = random_weights(rng, mask);
    ASSERT_EQ(adapted_distance(x, x, w), 0.0);
    ASSERT_EQ(adapted_distance(x, y, w), adapted_distance(y, x, w));
    ASSERT_LE(adapted_distance(x, z, w), adapted_distance(x, y, w) + adapted_distance(y, z, w) + 1e-12);
    ASSERT_EQ(euclidean(x, y), euclidean(y, x));
    ASSERT_LE(euclidean(x, z), euclidean(x, y) + euclidean(y, z) + 1e-12);
  }
}

TEST(MetricProperties, UniformWeightsMatchEuclidean) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10000; ++trial) {
    const AttributeMask mask = testgen::random_mask(rng);
    const PartialAttributeVector x = project(testgen::random_vector(rng), mask);
    const PartialAttributeVector y = project(testgen::random_vector(rng), mask);
    ASSERT_NEAR(adapted_distance(x, y, WeightVector::uniform(mask)), euclidean(x, y), 1e-12);
  }
}

TEST(WeightProperties, SumEqualsActiveDimensionality) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10000; ++trial) {
    const AttributeMask mask = testgen::random_mask(rng);
    const WeightVector w = random_weights(rng, mask);
    ASSERT_NEAR(w.sum(), static_cast<double>(mask.size()), 1e-9);
    for (AttributeId id : kAllAttributes) {
      ASSERT_GE(w[id], 0.0);
      if (!mask.contains(id)) ASSERT_EQ(w[id], 0.0);
    }
  }
}

TEST(WeightProperties, MultipliersRespectFloor) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10000; ++trial) {
    ParamSet p;
    p.gamma_e = 10.0 * u(rng);
    p.gamma_g = 10.0 * u(rng);
    p.gamma_t = 10.0 * u(rng);
    const ContextMultipliers m = compute_multipliers(
        u(rng), {2 * u(rng) - 1, 2 * u(rng) - 1}, testgen::random_state(rng), p);
    for (double v : m.values) ASSERT_GE(v, kMultiplierFloor);
  }
}

TEST(WeightProperties, MatchOracle) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 2000; ++trial) {
    const RankRequest r = testgen::random_request(rng);
    const StrategyLibrary lib = testgen::random_library(rng, 3);
    const Recommendation rec = rank_strategies(r, lib);
    const oracle::Vec w = oracle::weights(testgen::to_instance(r, lib));
    for (AttributeId id : kAllAttributes) ASSERT_NEAR(rec.weights[id], w[index_of(id)], 1e-12);
  }
}

TEST(PrototypeMultiplierProperties, AlwaysInRange) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10000; ++trial) {
    ParamSet p;
    p.gamma_e = 20.0 * u(rng);
    p.tau_e = u(rng);
    StrategyTemplate t{.name = "T", .profile = testgen::random_vector(rng)};
    const double mu = prototype_multiplier(testgen::random_state(rng), u(rng), t, p);
    ASSERT_GE(mu, kPrototypeMultiplierMin);
    ASSERT_LE(mu, kPrototypeMultiplierMax);
  }
}

TEST(RankingProperties, OracleArgminAgrees) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 1000; ++trial) {
    const RankRequest r = testgen::random_request(rng);
    const StrategyLibrary lib = testgen::random_library(rng, 2 + trial % 19);
    const Recommendation rec = rank_strategies(r, lib);
    const std::vector<double> s = oracle::scores(testgen::to_instance(r, lib));
    ASSERT_EQ(rec.chosen_id, oracle::argmin(s)) << "trial " << trial;
    for (const RankedEntry& e : rec.entries) ASSERT_NEAR(e.d_comb, s[e.strategy_id], 1e-12);
  }
}

TEST(RankingProperties, RanksArePermutationAndNondecreasing) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 1000; ++trial) {
    const RankRequest r = testgen::random_request(rng);
    const StrategyLibrary lib = testgen::random_library(rng, 8);
    const Recommendation rec = rank_strategies(r, lib);
    std::vector<bool> seen(lib.size(), false);
    for (std::size_t i = 0; i < rec.entries.size(); ++i) {
      ASSERT_EQ(rec.entries[i].rank, i + 1);
      ASSERT_FALSE(seen[rec.entries[i].strategy_id]);
      seen[rec.entries[i].strategy_id] = true;
      if (i > 0) ASSERT_GE(rec.entries[i].d_comb, rec.entries[i - 1].d_comb - 1e-12);
    }
  }
}

TEST(RankingProperties, Idempotent) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const RankRequest r = testgen::random_request(rng);
    const StrategyLibrary lib = testgen::random_library(rng, 6);
    ASSERT_EQ(rank_strategies(r, lib), rank_strategies(r, lib));
  }
}

TEST(RankingProperties, SubtractiveScoreMonotoneInAlpha) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 1000; ++trial) {
    RankRequest r = testgen::random_request(rng);
    if (!r.opponent) r.opponent = project(testgen::random_vector(rng), r.team.mask());
    r.mode = CombineMode::kSubtractive;
    const StrategyLibrary lib = testgen::random_library(rng, 4);
    r.params.alpha = 0.1;
    const Recommendation lo = rank_strategies(r, lib);
    r.params.alpha = 0.6;
    const Recommendation hi = rank_strategies(r, lib);
    for (const RankedEntry& e : lo.entries) {
      if (e.d_opp > 0.0) ASSERT_LT(hi.entry_for(e.strategy_id)->d_comb, e.d_comb);
    }
  }
}

TEST(AblationProperties, SuppressionTouchesOnlyItsTerm) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 500; ++trial) {
    const AttributeVector team = testgen::random_vector(rng);
    const AttributeVector s = testgen::random_vector(rng);
    for (AttributeId id : kAllAttributes) {
      const AttributeVector z = team.with(id, 0.0);
      const double before = std::pow(euclidean(team, s), 2);
      const double after = std::pow(euclidean(z, s), 2);
      const double expected = std::pow(s[id], 2) - std::pow(team[id] - s[id], 2);
      ASSERT_NEAR(after - before, expected, 1e-12);
    }
  }
}
