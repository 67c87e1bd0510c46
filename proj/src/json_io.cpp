#include "tacfit/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "tacfit/errors.hpp"

namespace tacfit {

namespace {

std::string sub(const std::string& field, std::string_view name) {
  if (field.empty()) return std::string(name);
  return field + "." + std::string(name);
}

void require_object(const Json& j, const std::string& field) {
  if (!j.is_object()) {
    throw ParseError((field.empty() ? std::string("payload") : field) + " must be a JSON object",
                     field);
  }
}

double require_number(const Json& j, const std::string& field) {
  if (!j.is_number()) throw ParseError(field + " must be a number", field);
  return j.get<double>();
}

std::string require_string(const Json& j, const std::string& field) {
  if (!j.is_string()) throw ParseError(field + " must be a string", field);
  return j.get<std::string>();
}

bool require_bool(const Json& j, const std::string& field) {
  if (!j.is_boolean()) throw ParseError(field + " must be true or false", field);
  return j.get<bool>();
}

void reject_unknown_keys(const Json& j, const std::string& field,
                         std::initializer_list<std::string_view> allowed) {
  for (const auto& [k, _] : j.items()) {
    bool ok = false;
    for (std::string_view a : allowed) ok = ok || a == k;
    if (!ok) throw ParseError("unknown key '" + k + "'", sub(field, k));
  }
}

AttributeId require_attribute_key(std::string_view text, const std::string& field) {
  auto id = parse_attribute_key(text);
  if (!id) {
    throw ParseError("'" + std::string(text) + "' is not an attribute key (A1..A14)", field);
  }
  return *id;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read file '" + path.string() + "'", path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write file '" + path.string() + "'", path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoFailure("write to '" + path.string() + "' failed", path.string());
}

Json parse_json_text(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string(what) + " is not valid JSON: " + e.what(), std::string(what));
  }
}

Json load_json_file(const std::filesystem::path& path) {
  return parse_json_text(read_text_file(path), path.string());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Vectors -------------------------------------------------------------------

Json to_json(const AttributeVector& v) {
  Json j = Json::object();
  for (AttributeId id : kAllAttributes) j[std::string(key(id))] = v[id];
  return j;
}

Json to_json(const PartialAttributeVector& v) {
  Json j = Json::object();
  Json active = Json::array();
  for (AttributeId id : v.mask().attributes()) {
    j[std::string(key(id))] = v.at(id);
    active.push_back(std::string(key(id)));
  }
  if (!v.is_full()) j["active"] = std::move(active);
  return j;
}

PartialAttributeVector profile_from_json(const Json& j, const std::string& field) {
  require_object(j, field);
  AttributeMask mask;
  if (j.contains("active")) {
    const Json& active = j.at("active");
    if (!active.is_array()) throw ParseError("active must be an array", sub(field, "active"));
    for (const Json& k : active) {
      const AttributeId id =
          require_attribute_key(require_string(k, sub(field, "active")), sub(field, "active"));
      if (mask.contains(id)) {
        throw ParseError("attribute listed twice in active", sub(field, "active"));
      }
      mask.insert(id);
    }
    if (mask.empty()) throw EmptyMask("active attribute list is empty", sub(field, "active"));
  } else {
    mask = AttributeMask::all();
  }
  for (const auto& [k, _] : j.items()) {
    if (k == "active") continue;
    const AttributeId id = require_attribute_key(k, sub(field, k));
    if (!mask.contains(id)) {
      throw ParseError(k + " has a value but is not listed in active", sub(field, k));
    }
  }
  std::vector<double> values;
  for (AttributeId id : mask.attributes()) {
    const std::string name(key(id));
    if (!j.contains(name)) throw ParseError("missing value for " + name, sub(field, name));
    const double value = require_number(j.at(name), sub(field, name));
    values.push_back(checked_unit(value, RangePolicy::kReject, sub(field, name)));
  }
  return PartialAttributeVector::make(mask, values);
}

AttributeVector full_profile_from_json(const Json& j, const std::string& field) {
  PartialAttributeVector v = profile_from_json(j, field);
  if (!v.is_full()) {
    throw ShapeMismatch(field + " must carry all 14 attributes", field);
  }
  return v.to_full();
}

// Match state and configuration ---------------------------------------------

Json to_json(const MatchState& s) {
  Json j = {{"time_remaining", s.time_remaining},
            {"score_state", static_cast<int>(s.score_state)}};
  if (s.energy) j["energy"] = *s.energy;
  return j;
}

MatchState state_from_json(const Json& j, const std::string& field) {
  require_object(j, field);
  reject_unknown_keys(j, field, {"time_remaining", "score_state", "energy"});
  MatchState s;
  if (j.contains("time_remaining")) {
    s.time_remaining = checked_unit(
        require_number(j.at("time_remaining"), sub(field, "time_remaining")),
        RangePolicy::kReject, sub(field, "time_remaining"));
  }
  if (j.contains("score_state")) {
    const Json& v = j.at("score_state");
    if (!v.is_number_integer()) {
      throw ParseError("score_state must be -1, 0 or 1", sub(field, "score_state"));
    }
    try {
      s.score_state = score_state_from_int(v.get<int>());
    } catch (const OutOfRange& e) {
      throw OutOfRange(e.what(), sub(field, "score_state"));
    }
  }
  if (j.contains("energy") && !j.at("energy").is_null()) {
    s.energy = checked_unit(require_number(j.at("energy"), sub(field, "energy")),
                            RangePolicy::kReject, sub(field, "energy"));
  }
  return s;
}

Json to_json(const ScoringConfig& c) {
  return {{"tau_e", c.params.tau_e},     {"gamma_e", c.params.gamma_e},
          {"gamma_g", c.params.gamma_g}, {"tau_t", c.params.tau_t},
          {"gamma_t", c.params.gamma_t}, {"alpha", c.params.alpha},
          {"combine_mode", std::string(to_string(c.mode))}};
}

ScoringConfig config_from_json(const Json& j, const std::string& field, ScoringConfig base) {
  require_object(j, field);
  reject_unknown_keys(j, field,
                      {"tau_e", "gamma_e", "gamma_g", "tau_t", "gamma_t", "alpha", "combine_mode"});
  auto read = [&](const char* name, double& slot) {
    if (j.contains(name)) slot = require_number(j.at(name), sub(field, name));
  };
  read("tau_e", base.params.tau_e);
  read("gamma_e", base.params.gamma_e);
  read("gamma_g", base.params.gamma_g);
  read("tau_t", base.params.tau_t);
  read("gamma_t", base.params.gamma_t);
  read("alpha", base.params.alpha);
  if (j.contains("combine_mode")) {
    try {
      base.mode = parse_combine_mode(require_string(j.at("combine_mode"), sub(field, "combine_mode")));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), sub(field, "combine_mode"));
    }
  }
  try {
    base.params.validate();
  } catch (const Error& e) {
    throw OutOfRange(e.what(), sub(field, e.field()));
  }
  return base;
}

// Library -------------------------------------------------------------------

Json to_json(const StrategyTemplate& t) {
  return {{"id", t.id},
          {"name", t.name},
          {"category", std::string(to_string(t.category))},
          {"canonical", t.canonical},
          {"profile", to_json(t.profile)}};
}

Json to_json(const StrategyLibrary& library) {
  Json j = Json::array();
  for (const StrategyTemplate& t : library) j.push_back(to_json(t));
  return j;
}

LoadedLibrary library_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("library must be a JSON array of strategies");
  std::vector<StrategyTemplate> templates;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string field = "strategies[" + std::to_string(i) + "]";
    const Json& e = j[i];
    require_object(e, field);
    reject_unknown_keys(e, field, {"id", "name", "category", "canonical", "profile"});
    for (const char* required : {"name", "category", "profile"}) {
      if (!e.contains(required)) {
        throw ParseError(std::string("missing key '") + required + "'", sub(field, required));
      }
    }
    StrategyTemplate t;
    t.name = require_string(e.at("name"), sub(field, "name"));
    try {
      t.category = parse_category(require_string(e.at("category"), sub(field, "category")));
    } catch (const ParseError& err) {
      throw ParseError(err.what(), sub(field, "category"));
    }
    t.canonical = e.contains("canonical") && require_bool(e.at("canonical"), sub(field, "canonical"));
    t.profile = full_profile_from_json(e.at("profile"), sub(field, "profile"));
    templates.push_back(std::move(t));
  }
  LoadedLibrary out;
  out.library = StrategyLibrary::make(std::move(templates), &out.warnings);
  return out;
}

// Results ---------------------------------------------------------------------

Json to_json(const WeightVector& w) {
  Json j = Json::object();
  for (AttributeId id : w.mask().attributes()) j[std::string(key(id))] = w[id];
  return j;
}

Json to_json(const GapEstimate& g) {
  return {{"delta_tech", g.delta_tech}, {"delta_phys", g.delta_phys}};
}

Json to_json(const Diagnostics& d) {
  Json items = Json::array();
  for (const AttributeDiagnostic& a : d.items) {
    items.push_back({{"attribute", std::string(key(a.attribute))},
                     {"name", std::string(display_name(a.attribute))},
                     {"team", a.team},
                     {"strategy", a.strategy},
                     {"delta", a.delta},
                     {"class", std::string(to_string(a.classification))}});
  }
  return {{"strategy_id", d.strategy_id}, {"strategy", d.strategy_name}, {"items", items}};
}

Json to_json(const Recommendation& r) {
  Json entries = Json::array();
  for (const RankedEntry& e : r.entries) {
    entries.push_back({{"id", e.strategy_id},
                       {"name", e.name},
                       {"d_eucl", e.d_eucl},
                       {"d_adapt", e.d_adapt},
                       {"d_opp", e.d_opp},
                       {"d_comb", e.d_comb},
                       {"mu", e.mu},
                       {"rank", e.rank}});
  }
  return {{"chosen", r.chosen_name},
          {"chosen_id", r.chosen_id},
          {"entries", entries},
          {"weights", to_json(r.weights)},
          {"gaps", to_json(r.gaps)},
          {"energy", r.energy},
          {"alpha", r.alpha},
          {"combine_mode", std::string(to_string(r.mode))},
          {"state", to_json(r.state)},
          {"diagnostics", to_json(r.diagnostics)}};
}

Json to_json(const WhatIfResult& r) {
  Json j = to_json(r.variant);
  j["base"] = to_json(r.base);
  Json deltas = Json::array();
  for (const RankDelta& d : r.deltas) {
    deltas.push_back({{"id", d.strategy_id},
                      {"name", d.name},
                      {"base_rank", d.base_rank},
                      {"variant_rank", d.variant_rank},
                      {"delta", d.delta}});
  }
  j["rank_deltas"] = deltas;
  return j;
}

RankRequest request_from_json(const Json& j, const std::string& field) {
  require_object(j, field);
  reject_unknown_keys(j, field, {"team", "opponent", "state", "params"});
  if (!j.contains("team")) throw ParseError("missing key 'team'", sub(field, "team"));
  RankRequest r{.team = profile_from_json(j.at("team"), sub(field, "team"))};
  if (j.contains("opponent") && !j.at("opponent").is_null()) {
    r.opponent = profile_from_json(j.at("opponent"), sub(field, "opponent"));
  }
  if (j.contains("state")) r.state = state_from_json(j.at("state"), sub(field, "state"));
  if (j.contains("params")) {
    const ScoringConfig c = config_from_json(j.at("params"), sub(field, "params"));
    r.params = c.params;
    r.mode = c.mode;
  }
  return r;
}

Json to_json(const RankRequest& r) {
  Json j = {{"team", to_json(r.team)},
            {"state", to_json(r.state)},
            {"params", to_json(ScoringConfig{r.params, r.mode})}};
  if (r.opponent) j["opponent"] = to_json(*r.opponent);
  return j;
}

WhatIfOverrides overrides_from_json(const Json& j, const std::string& field) {
  require_object(j, field);
  reject_unknown_keys(j, field, {"time_remaining", "score_state", "energy", "team", "opponent"});
  WhatIfOverrides o;
  if (j.contains("time_remaining")) {
    o.time_remaining = checked_unit(
        require_number(j.at("time_remaining"), sub(field, "time_remaining")),
        RangePolicy::kReject, sub(field, "time_remaining"));
  }
  if (j.contains("score_state")) {
    const Json& v = j.at("score_state");
    if (!v.is_number_integer()) {
      throw ParseError("score_state must be -1, 0 or 1", sub(field, "score_state"));
    }
    try {
      o.score_state = score_state_from_int(v.get<int>());
    } catch (const OutOfRange& e) {
      throw OutOfRange(e.what(), sub(field, "score_state"));
    }
  }
  if (j.contains("energy")) {
    o.energy = checked_unit(require_number(j.at("energy"), sub(field, "energy")),
                            RangePolicy::kReject, sub(field, "energy"));
  }
  auto read_edits = [&](const char* name, std::map<AttributeId, double>& out) {
    if (!j.contains(name)) return;
    const std::string f = sub(field, name);
    require_object(j.at(name), f);
    for (const auto& [k, v] : j.at(name).items()) {
      const AttributeId id = require_attribute_key(k, sub(f, k));
      out[id] = checked_unit(require_number(v, sub(f, k)), RangePolicy::kReject, sub(f, k));
    }
  };
  read_edits("team", o.team);
  read_edits("opponent", o.opponent);
  return o;
}

namespace {

AggregationNode node_from_json(const Json& j, const std::string& field) {
  require_object(j, field);
  reject_unknown_keys(j, field, {"id", "combiner", "children"});
  AggregationNode node;
  node.id = j.contains("id") ? require_string(j.at("id"), sub(field, "id")) : field;
  if (j.contains("combiner")) {
    const std::string c = require_string(j.at("combiner"), sub(field, "combiner"));
    if (c == "weighted") {
      node.combiner = Combiner::kWeighted;
    } else if (c == "max") {
      node.combiner = Combiner::kMax;
    } else {
      throw ParseError("combiner must be 'weighted' or 'max'", sub(field, "combiner"));
    }
  }
  if (!j.contains("children") || !j.at("children").is_array()) {
    throw ParseError("children must be an array", sub(field, "children"));
  }
  std::size_t i = 0;
  for (const Json& c : j.at("children")) {
    const std::string f = sub(field, "children[" + std::to_string(i++) + "]");
    require_object(c, f);
    reject_unknown_keys(c, f, {"leaf", "node", "weight"});
    NodeChild child;
    if (c.contains("leaf") == c.contains("node")) {
      throw ParseError("child needs exactly one of 'leaf' or 'node'", f);
    }
    if (c.contains("leaf")) {
      child.leaf = require_string(c.at("leaf"), sub(f, "leaf"));
    } else {
      child.node = std::make_shared<const AggregationNode>(node_from_json(c.at("node"), sub(f, "node")));
    }
    if (c.contains("weight")) child.weight = require_number(c.at("weight"), sub(f, "weight"));
    node.children.push_back(std::move(child));
  }
  return node;
}

}  // namespace

ContextTree tree_from_json(const Json& j) {
  require_object(j, "tree");
  ContextTree tree;
  for (const auto& [k, v] : j.items()) {
    const std::string f = sub("tree", k);
    const AttributeId id = require_attribute_key(k, f);
    if (v.is_string() && v.get<std::string>() == "direct") {
      tree.set_direct(id);
      continue;
    }
    try {
      tree.set_root(id, node_from_json(v, f));
    } catch (const Error& e) {
      if (!e.field().empty()) throw;
      throw InvalidTree(e.what(), f);
    }
  }
  return tree;
}

TreeInputs tree_inputs_from_json(const Json& leaves, const Json& benchmarks, const Json& direct) {
  TreeInputs inputs;
  require_object(leaves, "leaves");
  require_object(benchmarks, "benchmarks");
  for (const auto& [k, v] : leaves.items()) {
    const std::string f = sub("leaves", k);
    if (!benchmarks.contains(k)) throw MissingLeaf("no benchmark for leaf '" + k + "'", sub("benchmarks", k));
    const Json& b = benchmarks.at(k);
    const std::string bf = sub("benchmarks", k);
    require_object(b, bf);
    reject_unknown_keys(b, bf, {"min", "max"});
    if (!b.contains("min") || !b.contains("max")) throw ParseError("benchmark needs min and max", bf);
    inputs.leaves[k] = LeafMetric{k, require_number(v, f),
                                  Benchmark{require_number(b.at("min"), sub(bf, "min")),
                                            require_number(b.at("max"), sub(bf, "max"))}};
  }
  if (!direct.is_null()) {
    require_object(direct, "direct");
    for (const auto& [k, v] : direct.items()) {
      const std::string f = sub("direct", k);
      inputs.direct[require_attribute_key(k, f)] =
          checked_unit(require_number(v, f), RangePolicy::kReject, f);
    }
  }
  return inputs;
}

}  // namespace tacfit
