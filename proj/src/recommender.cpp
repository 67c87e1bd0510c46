#include "tacfit/recommender.hpp"

#include <algorithm>
#include <limits>

#include "tacfit/errors.hpp"

namespace tacfit {

namespace {

// Absorbs representation error when comparing deltas to the label threshold.
constexpr double kThresholdSlack = 1e-9;

// Rank order: repeatedly take the smallest remaining score, preferring the
// earliest library position among scores within kTieTolerance of it.
std::vector<std::size_t> rank_order(const std::vector<double>& scores) {
  std::vector<std::size_t> remaining(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) remaining[i] = i;
  std::vector<std::size_t> order;
  order.reserve(scores.size());
  while (!remaining.empty()) {
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t i : remaining) lowest = std::min(lowest, scores[i]);
    auto pick = std::find_if(remaining.begin(), remaining.end(),
                             [&](std::size_t i) { return scores[i] <= lowest + kTieTolerance; });
    order.push_back(*pick);
    remaining.erase(pick);
  }
  return order;
}

}  // namespace

std::string_view to_string(DiagnosticClass c) {
  switch (c) {
    case DiagnosticClass::kDeficit:
      return "deficit";
    case DiagnosticClass::kAligned:
      return "aligned";
    case DiagnosticClass::kSurplus:
      return "surplus";
  }
  return "unknown";
}

const RankedEntry* Recommendation::entry_for(std::size_t strategy_id) const {
  for (const RankedEntry& e : entries) {
    if (e.strategy_id == strategy_id) return &e;
  }
  return nullptr;
}

GapEstimate estimate_gaps(const AttributeVector& team, const AttributeVector& opp) {
  return {team[AttributeId::A12] - opp[AttributeId::A12],
          team[AttributeId::A13] - opp[AttributeId::A13]};
}

GapEstimate estimate_gaps(const PartialAttributeVector& team, const PartialAttributeVector& opp) {
  auto gap = [&](AttributeId id) {
    auto t = team.get(id);
    auto o = opp.get(id);
    return (t && o) ? *t - *o : 0.0;
  };
  return {gap(AttributeId::A12), gap(AttributeId::A13)};
}

double effective_energy(const PartialAttributeVector& team, const MatchState& state,
                        const ParamSet& params) {
  if (state.energy) return *state.energy;
  if (auto a8 = team.get(AttributeId::A8)) return *a8;
  return params.tau_e;
}

Recommendation rank_strategies(const RankRequest& request, const StrategyLibrary& library) {
  request.state.validate();
  request.params.validate();
  if (library.empty()) throw EmptyLibrary("strategy library is empty");

  const PartialAttributeVector& team = request.team;
  const AttributeMask& mask = team.mask();
  if (request.opponent && request.opponent->mask() != mask) {
    throw ShapeMismatch("opponent vector does not share the team's active attributes",
                        "opponent");
  }

  Recommendation rec;
  rec.state = request.state;
  rec.mode = request.mode;
  rec.alpha = request.opponent ? request.params.alpha : 0.0;
  rec.gaps = request.opponent ? estimate_gaps(team, *request.opponent) : GapEstimate{};
  rec.energy = effective_energy(team, request.state, request.params);
  rec.weights = normalize_weights(
      compute_multipliers(rec.energy, rec.gaps, request.state, request.params), mask);

  std::vector<RankedEntry> scored;
  scored.reserve(library.size());
  for (const StrategyTemplate& t : library) {
    const PartialAttributeVector profile = project(t.profile, mask);
    RankedEntry e;
    e.strategy_id = t.id;
    e.name = t.name;
    e.d_eucl = euclidean(team, profile);
    e.d_adapt = adapted_distance(team, profile, rec.weights);
    if (request.opponent) e.d_opp = adapted_distance(*request.opponent, profile, rec.weights);
    if (request.mode == CombineMode::kExponential) {
      e.mu = prototype_multiplier(request.state, rec.energy, t, request.params);
      e.d_comb = combine(e.d_adapt, e.d_opp, e.mu * rec.alpha, CombineMode::kExponential);
    } else {
      e.d_comb = combine(e.d_adapt, e.d_opp, rec.alpha, CombineMode::kSubtractive);
    }
    scored.push_back(std::move(e));
  }

  std::vector<double> scores;
  scores.reserve(scored.size());
  for (const RankedEntry& e : scored) scores.push_back(e.d_comb);
  for (std::size_t i : rank_order(scores)) {
    rec.entries.push_back(scored[i]);
    rec.entries.back().rank = rec.entries.size();
  }

  const StrategyTemplate& chosen = library[rec.entries.front().strategy_id];
  rec.chosen_id = chosen.id;
  rec.chosen_name = chosen.name;
  rec.diagnostics = diagnostics(team, chosen);
  return rec;
}

Diagnostics diagnostics(const PartialAttributeVector& team, const StrategyTemplate& chosen,
                        double threshold) {
  const PartialAttributeVector profile = project(chosen.profile, team.mask());
  Diagnostics out;
  out.strategy_id = chosen.id;
  out.strategy_name = chosen.name;
  for (AttributeId id : team.mask().attributes()) {
    AttributeDiagnostic d;
    d.attribute = id;
    d.team = team.at(id);
    d.strategy = profile.at(id);
    d.delta = d.strategy - d.team;
    if (d.delta > threshold + kThresholdSlack) {
      d.classification = DiagnosticClass::kDeficit;
    } else if (d.delta < -threshold - kThresholdSlack) {
      d.classification = DiagnosticClass::kSurplus;
    }
    out.items.push_back(d);
  }
  return out;
}

bool WhatIfOverrides::empty() const {
  return !time_remaining && !score_state && !energy && team.empty() && opponent.empty();
}

RankRequest apply_overrides(const RankRequest& base, const WhatIfOverrides& overrides) {
  RankRequest out = base;
  if (overrides.time_remaining) out.state.time_remaining = *overrides.time_remaining;
  if (overrides.score_state) out.state.score_state = *overrides.score_state;
  if (overrides.energy) out.state.energy = *overrides.energy;
  out.state.validate();
  for (const auto& [id, value] : overrides.team) out.team = out.team.with(id, value);
  if (!overrides.opponent.empty()) {
    if (!out.opponent) {
      throw MissingOpponent("opponent edits given but the request has no opponent", "opponent");
    }
    for (const auto& [id, value] : overrides.opponent) {
      out.opponent = out.opponent->with(id, value);
    }
  }
  return out;
}

WhatIfResult whatif(const RankRequest& base, const WhatIfOverrides& overrides,
                    const StrategyLibrary& library) {
  WhatIfResult result{rank_strategies(base, library),
                      rank_strategies(apply_overrides(base, overrides), library),
                      {}};
  for (const StrategyTemplate& t : library) {
    RankDelta d;
    d.strategy_id = t.id;
    d.name = t.name;
    d.base_rank = result.base.entry_for(t.id)->rank;
    d.variant_rank = result.variant.entry_for(t.id)->rank;
    d.delta = static_cast<long>(d.base_rank) - static_cast<long>(d.variant_rank);
    result.deltas.push_back(std::move(d));
  }
  return result;
}

}  // namespace tacfit
