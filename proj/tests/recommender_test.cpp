#include <gtest/gtest.h>

#include "tacfit/errors.hpp"
#include "tacfit/recommender.hpp"

using namespace tacfit;
using A = AttributeId;

namespace {

const AttributeMask kPilotMask{A::A1, A::A2, A::A4, A::A5, A::A8};

RankRequest pilot_request() {
  RankRequest r{.team = PartialAttributeVector::make(kPilotMask, {0.85, 0.50, 0.85, 0.50, 0.35})};
  r.state = MatchState::make(0.5, 0);
  return r;
}

std::vector<std::string> names_in_rank_order(const Recommendation& rec) {
  std::vector<std::string> out;
  for (const RankedEntry& e : rec.entries) out.push_back(e.name);
  return out;
}

}  // namespace

TEST(RankStrategies, PilotHalftime) {
  const Recommendation rec = rank_strategies(pilot_request(), builtin_canonical());
  EXPECT_EQ(rec.chosen_name, "Build-up Play");
  EXPECT_EQ(names_in_rank_order(rec),
            (std::vector<std::string>{"Build-up Play", "Fast Counterattack", "High Pressing",
                                      "Gegenpressing", "Positional Defense"}));
  EXPECT_DOUBLE_EQ(rec.energy, 0.35);
  EXPECT_EQ(rec.alpha, 0.0);
  EXPECT_EQ(rec.gaps, GapEstimate{});
  for (std::size_t i = 0; i < rec.entries.size(); ++i) {
    EXPECT_EQ(rec.entries[i].rank, i + 1);
    EXPECT_EQ(rec.entries[i].d_comb, rec.entries[i].d_adapt);
    EXPECT_EQ(rec.entries[i].mu, 1.0);
  }
}

TEST(RankStrategies, ExactTiesFollowLibraryOrder) {
  // High Pressing precedes Gegenpressing in the library; on the pilot mask
  // their distances agree.
  const Recommendation rec = rank_strategies(pilot_request(), builtin_canonical());
  const RankedEntry* hp = rec.entry_for(0);
  const RankedEntry* gp = rec.entry_for(4);
  ASSERT_TRUE(hp && gp);
  EXPECT_NEAR(hp->d_comb, gp->d_comb, 1e-12);
  EXPECT_LT(hp->rank, gp->rank);

  StrategyTemplate a{.name = "First", .profile = AttributeVector::filled(0.5)};
  StrategyTemplate b{.name = "Second", .profile = AttributeVector::filled(0.5)};
  RankRequest r{.team = AttributeVector::filled(0.4)};
  EXPECT_EQ(rank_strategies(r, StrategyLibrary::make({a, b})).chosen_name, "First");
  EXPECT_EQ(rank_strategies(r, StrategyLibrary::make({b, a})).chosen_name, "Second");
}

TEST(RankStrategies, Diagnostics) {
  const Recommendation rec = rank_strategies(pilot_request(), builtin_canonical());
  const Diagnostics& d = rec.diagnostics;
  EXPECT_EQ(d.strategy_name, "Build-up Play");
  ASSERT_EQ(d.items.size(), 5u);
  EXPECT_EQ(d.items[2].attribute, A::A4);
  EXPECT_NEAR(d.items[2].delta, -0.35, 1e-12);
  EXPECT_EQ(d.items[2].classification, DiagnosticClass::kSurplus);
  EXPECT_EQ(d.items[4].attribute, A::A8);
  EXPECT_NEAR(d.items[4].delta, 0.25, 1e-12);
  EXPECT_EQ(d.items[4].classification, DiagnosticClass::kDeficit);
  // A5 sits exactly on the threshold and stays aligned.
  EXPECT_EQ(d.items[3].classification, DiagnosticClass::kAligned);
}

TEST(RankStrategies, OpponentChangesScoresNotDistances) {
  RankRequest r{.team = AttributeVector::filled(0.6)};
  const Recommendation plain = rank_strategies(r, builtin_canonical());
  r.opponent = AttributeVector::filled(0.3);
  const Recommendation with_opp = rank_strategies(r, builtin_canonical());
  EXPECT_EQ(with_opp.alpha, 0.2);
  for (const RankedEntry& e : with_opp.entries) {
    const RankedEntry* base = plain.entry_for(e.strategy_id);
    EXPECT_DOUBLE_EQ(e.d_adapt, base->d_adapt);
    EXPECT_GT(e.d_opp, 0.0);
    EXPECT_DOUBLE_EQ(e.d_comb, e.d_adapt - 0.2 * e.d_opp);
  }
}

TEST(RankStrategies, AlphaZeroMatchesPlainRanking) {
  RankRequest r{.team = AttributeVector::filled(0.6)};
  r.opponent = AttributeVector::filled(0.2);
  r.params.alpha = 0.0;
  for (CombineMode mode : {CombineMode::kSubtractive, CombineMode::kExponential}) {
    r.mode = mode;
    for (const RankedEntry& e : rank_strategies(r, builtin_canonical()).entries) {
      EXPECT_EQ(e.d_comb, e.d_adapt);
    }
  }
}

TEST(RankStrategies, ExponentialModeUsesPrototypeMultiplier) {
  RankRequest r{.team = AttributeVector::filled(0.6)};
  r.opponent = AttributeVector::filled(0.2);
  r.state.energy = 0.2;
  r.mode = CombineMode::kExponential;
  const Recommendation rec = rank_strategies(r, builtin_canonical());
  for (const RankedEntry& e : rec.entries) {
    const StrategyTemplate t = builtin_canonical()[e.strategy_id];
    EXPECT_DOUBLE_EQ(e.mu, prototype_multiplier(r.state, 0.2, t, r.params));
    EXPECT_DOUBLE_EQ(e.d_comb, e.d_adapt + e.mu * 0.2 * std::exp(-e.d_opp));
  }
}

TEST(RankStrategies, EnergyFallbacks) {
  ParamSet p;
  const PartialAttributeVector no_a8 = PartialAttributeVector::make(AttributeMask{A::A1}, {0.5});
  EXPECT_EQ(effective_energy(no_a8, MatchState{}, p), p.tau_e);
  MatchState s;
  s.energy = 0.1;
  EXPECT_EQ(effective_energy(no_a8, s, p), 0.1);
  EXPECT_EQ(effective_energy(AttributeVector::filled(0.7), MatchState{}, p), 0.7);
}

TEST(RankStrategies, Errors) {
  RankRequest r = pilot_request();
  EXPECT_THROW(rank_strategies(r, StrategyLibrary{}), EmptyLibrary);
  r.opponent = AttributeVector::filled(0.5);
  EXPECT_THROW(rank_strategies(r, builtin_canonical()), ShapeMismatch);
  r = pilot_request();
  r.state.time_remaining = 2.0;
  EXPECT_THROW(rank_strategies(r, builtin_canonical()), OutOfRange);
}

TEST(Gaps, PartialVectorsIgnoreInactive) {
  const AttributeVector team = AttributeVector::filled(0.5).with(A::A12, 0.7).with(A::A13, 0.4);
  const AttributeVector opp = AttributeVector::filled(0.5).with(A::A12, 0.6).with(A::A13, 0.6);
  const GapEstimate g = estimate_gaps(team, opp);
  EXPECT_NEAR(g.delta_tech, 0.1, 1e-12);
  EXPECT_NEAR(g.delta_phys, -0.2, 1e-12);
  const AttributeMask m{A::A1, A::A12};
  const GapEstimate pg = estimate_gaps(project(team, m), project(opp, m));
  EXPECT_NEAR(pg.delta_tech, 0.1, 1e-12);
  EXPECT_EQ(pg.delta_phys, 0.0);
}

TEST(WhatIf, RestoredEnergyPromotesCounterattack) {
  WhatIfOverrides o;
  o.team[A::A8] = 0.80;
  const WhatIfResult r = whatif(pilot_request(), o, builtin_canonical());
  EXPECT_EQ(r.base.chosen_name, "Build-up Play");
  EXPECT_EQ(r.variant.chosen_name, "Fast Counterattack");
  EXPECT_NEAR(r.variant.chosen().d_comb, 0.1225, 1e-4);
  ASSERT_EQ(r.deltas.size(), 5u);
  const RankDelta& fc = r.deltas[1];
  EXPECT_EQ(fc.name, "Fast Counterattack");
  EXPECT_EQ(fc.base_rank, 2u);
  EXPECT_EQ(fc.variant_rank, 1u);
  EXPECT_EQ(fc.delta, 1);
  long total = 0;
  for (const RankDelta& d : r.deltas) total += d.delta;
  EXPECT_EQ(total, 0);
}

TEST(WhatIf, EmptyOverridesAreIdentity) {
  const WhatIfResult r = whatif(pilot_request(), WhatIfOverrides{}, builtin_canonical());
  EXPECT_EQ(r.base, r.variant);
  for (const RankDelta& d : r.deltas) EXPECT_EQ(d.delta, 0);
}

TEST(WhatIf, OverrideErrors) {
  WhatIfOverrides o;
  o.team[A::A3] = 0.5;
  EXPECT_THROW(apply_overrides(pilot_request(), o), InactiveAttribute);
  o = {};
  o.opponent[A::A1] = 0.5;
  EXPECT_THROW(apply_overrides(pilot_request(), o), MissingOpponent);
  o = {};
  o.team[A::A8] = 1.5;
  EXPECT_THROW(apply_overrides(pilot_request(), o), OutOfRange);
  o = {};
  o.time_remaining = 0.1;
  o.score_state = ScoreState::kLosing;
  o.energy = 0.2;
  const RankRequest v = apply_overrides(pilot_request(), o);
  EXPECT_EQ(v.state.time_remaining, 0.1);
  EXPECT_EQ(v.state.score_state, ScoreState::kLosing);
  EXPECT_EQ(v.state.energy, 0.2);
}
