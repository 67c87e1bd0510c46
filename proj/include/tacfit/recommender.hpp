#pragma once

// Strategy selection: gap estimation, weight construction, per-strategy
// scoring, deterministic ranking, and per-attribute diagnostics for the chosen
// strategy.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tacfit/attribute_space.hpp"
#include "tacfit/distance.hpp"
#include "tacfit/strategy_library.hpp"

namespace tacfit {

/// Scores closer than this are treated as tied and fall back to library order.
inline constexpr double kTieTolerance = 1e-12;

/// Deltas beyond +/- this are labelled deficit / surplus.
inline constexpr double kDiagnosticThreshold = 0.10;

enum class DiagnosticClass { kDeficit, kAligned, kSurplus };
std::string_view to_string(DiagnosticClass c);

struct AttributeDiagnostic {
  AttributeId attribute;
  double team = 0.0;
  double strategy = 0.0;
  double delta = 0.0;  // strategy - team
  DiagnosticClass classification = DiagnosticClass::kAligned;

  bool operator==(const AttributeDiagnostic&) const = default;
};

struct Diagnostics {
  std::size_t strategy_id = 0;
  std::string strategy_name;
  std::vector<AttributeDiagnostic> items;  // ascending attribute order

  bool operator==(const Diagnostics&) const = default;
};

struct RankedEntry {
  std::size_t strategy_id = 0;
  std::string name;
  double d_eucl = 0.0;
  double d_adapt = 0.0;
  double d_opp = 0.0;   // adapted distance opponent -> strategy (0 without opponent)
  double d_comb = 0.0;  // ranking score; equals d_adapt when alpha = 0
  double mu = 1.0;      // prototype multiplier, 1 outside exponential mode
  std::size_t rank = 0; // 1-based

  bool operator==(const RankedEntry&) const = default;
};

/// Everything `rank_strategies` needs. A missing opponent forces alpha to 0
/// and both gaps to 0.
struct RankRequest {
  PartialAttributeVector team;
  std::optional<PartialAttributeVector> opponent;
  MatchState state;
  ParamSet params;
  CombineMode mode = CombineMode::kSubtractive;
};

struct Recommendation {
  std::vector<RankedEntry> entries;  // rank order
  std::size_t chosen_id = 0;
  std::string chosen_name;
  WeightVector weights;
  GapEstimate gaps;
  MatchState state;
  double energy = 0.0;  // energy value fed into the multipliers
  double alpha = 0.0;   // effective opponent factor
  CombineMode mode = CombineMode::kSubtractive;
  Diagnostics diagnostics;

  const RankedEntry& chosen() const { return entries.front(); }
  /// Entry for a strategy id, or nullptr.
  const RankedEntry* entry_for(std::size_t strategy_id) const;

  bool operator==(const Recommendation&) const = default;
};

/// (team A12 - opp A12, team A13 - opp A13).
GapEstimate estimate_gaps(const AttributeVector& team, const AttributeVector& opp);
/// Partial variant: a gap whose attribute is inactive is 0.
GapEstimate estimate_gaps(const PartialAttributeVector& team, const PartialAttributeVector& opp);

/// Energy fed to the multipliers: the state override, else team A8, else the
/// energy threshold (no deficit) when A8 is not observed.
double effective_energy(const PartialAttributeVector& team, const MatchState& state,
                        const ParamSet& params);

/// Throws EmptyLibrary, ShapeMismatch (opponent mask differs from team mask),
/// or validation errors on the state/params.
Recommendation rank_strategies(const RankRequest& request, const StrategyLibrary& library);

/// Per-attribute deltas (strategy - team) over the team's active set.
Diagnostics diagnostics(const PartialAttributeVector& team, const StrategyTemplate& chosen,
                        double threshold = kDiagnosticThreshold);

// What-if exploration -------------------------------------------------------

struct WhatIfOverrides {
  std::optional<double> time_remaining;
  std::optional<ScoreState> score_state;
  std::optional<double> energy;
  std::map<AttributeId, double> team;
  std::map<AttributeId, double> opponent;

  bool empty() const;
};

struct RankDelta {
  std::size_t strategy_id = 0;
  std::string name;
  std::size_t base_rank = 0;
  std::size_t variant_rank = 0;
  /// base_rank - variant_rank; positive means the strategy moved up.
  long delta = 0;

  bool operator==(const RankDelta&) const = default;
};

struct WhatIfResult {
  Recommendation base;
  Recommendation variant;
  std::vector<RankDelta> deltas;  // library order
};

/// Throws InactiveAttribute for edits of attributes the vectors do not carry,
/// MissingOpponent for opponent edits without an opponent, OutOfRange for
/// invalid values.
RankRequest apply_overrides(const RankRequest& base, const WhatIfOverrides& overrides);

WhatIfResult whatif(const RankRequest& base, const WhatIfOverrides& overrides,
                    const StrategyLibrary& library);

}  // namespace tacfit
