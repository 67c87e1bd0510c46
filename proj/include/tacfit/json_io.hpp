#pragma once

// JSON schemas shared by every file format and API payload.
//
//   attribute vector   {"A1": 0.7, ..., "A14": 0.8}
//   partial vector     {"A1": 0.85, "A4": 0.85, "active": ["A1", "A4"]}
//   match state        {"time_remaining": 0.5, "score_state": 0, "energy": 0.4}
//   scoring config     {"tau_e", "gamma_e", "gamma_g", "tau_t", "gamma_t",
//                       "alpha", "combine_mode"}
//   strategy library   [{"name", "category", "canonical", "profile": {...}}]
//   recommendation     {"chosen", "chosen_id", "entries": [...], "weights",
//                       "gaps", "diagnostics", "state", ...}
//
// Parse failures throw ParseError (or the domain error of the offending
// value) with `field()` set to a dotted path such as "team.A3".

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "tacfit/attribute_space.hpp"
#include "tacfit/context_tree.hpp"
#include "tacfit/distance.hpp"
#include "tacfit/recommender.hpp"
#include "tacfit/strategy_library.hpp"

namespace tacfit {

using Json = nlohmann::json;

/// Throws IoFailure naming the path.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Throws ParseError naming `what` (a path or payload name).
Json parse_json_text(std::string_view text, std::string_view what);
Json load_json_file(const std::filesystem::path& path);

/// Serialized form used for files and HTTP bodies: 2-space indent, trailing
/// newline.
std::string dump(const Json& j);

Json to_json(const AttributeVector& v);
/// Full vectors serialize without "active".
Json to_json(const PartialAttributeVector& v);
PartialAttributeVector profile_from_json(const Json& j, const std::string& field);
/// Rejects partial vectors with ShapeMismatch.
AttributeVector full_profile_from_json(const Json& j, const std::string& field);

Json to_json(const MatchState& s);
MatchState state_from_json(const Json& j, const std::string& field);

struct ScoringConfig {
  ParamSet params;
  CombineMode mode = CombineMode::kSubtractive;
};

Json to_json(const ScoringConfig& c);
/// Missing keys keep the values in `base`.
ScoringConfig config_from_json(const Json& j, const std::string& field, ScoringConfig base = {});

Json to_json(const StrategyTemplate& t);
Json to_json(const StrategyLibrary& library);
LoadedLibrary library_from_json(const Json& j);

Json to_json(const WeightVector& w);
Json to_json(const GapEstimate& g);
Json to_json(const Diagnostics& d);
Json to_json(const Recommendation& r);
/// Variant recommendation at top level, plus "base" and "rank_deltas".
Json to_json(const WhatIfResult& r);

/// {"team", "opponent"?, "state"?, "params"?}.
RankRequest request_from_json(const Json& j, const std::string& field = {});
Json to_json(const RankRequest& r);

/// {"time_remaining"?, "score_state"?, "energy"?, "team"?: {"A8": 0.8},
///  "opponent"?: {...}}.
WhatIfOverrides overrides_from_json(const Json& j, const std::string& field);

/// {"A1": <node>, "A14": "direct", ...}; absent attributes are direct.
/// <node> is {"id", "combiner": "weighted"|"max", "children":
/// [{"leaf": "id", "weight": w} | {"node": <node>, "weight": w}]}.
ContextTree tree_from_json(const Json& j);

/// leaves: {"leaf_id": raw}; benchmarks: {"leaf_id": {"min", "max"}};
/// direct: {"A14": 0.8}. Every leaf needs a benchmark.
TreeInputs tree_inputs_from_json(const Json& leaves, const Json& benchmarks, const Json& direct);

}  // namespace tacfit
