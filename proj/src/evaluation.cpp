#include "tacfit/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "tacfit/errors.hpp"

namespace tacfit {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw OutOfRange("alpha " + num(alpha) + " is outside [0,1]", "alpha");
  }
}

}  // namespace

// Fixtures --------------------------------------------------------------------

std::vector<ScenarioSpec> parse_scenarios(const Json& j) {
  if (!j.is_array()) throw ParseError("scenario fixtures must be a JSON array");
  std::vector<ScenarioSpec> out;
  std::set<std::string> names;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string field = "scenarios[" + std::to_string(i) + "]";
    const Json& e = j[i];
    if (!e.is_object()) throw ParseError(field + " must be an object", field);
    for (const auto& [k, _] : e.items()) {
      if (k != "name" && k != "team" && k != "opponent" && k != "state" && k != "expected_top" &&
          k != "provenance") {
        throw ParseError("unknown key '" + k + "'", field + "." + k);
      }
    }
    ScenarioSpec s;
    if (!e.contains("name") || !e.at("name").is_string()) {
      throw ParseError("scenario needs a string name", field + ".name");
    }
    s.name = e.at("name").get<std::string>();
    if (!names.insert(s.name).second) {
      throw DuplicateName("scenario name '" + s.name + "' repeats", field + ".name");
    }
    if (!e.contains("team")) throw ParseError("missing key 'team'", field + ".team");
    s.team = full_profile_from_json(e.at("team"), field + ".team");
    if (e.contains("opponent") && !e.at("opponent").is_null()) {
      s.opponent = full_profile_from_json(e.at("opponent"), field + ".opponent");
    }
    if (e.contains("state")) s.state = state_from_json(e.at("state"), field + ".state");
    const std::string top_field = field + ".expected_top";
    if (!e.contains("expected_top") || !e.at("expected_top").is_array() ||
        e.at("expected_top").empty()) {
      throw ParseError("expected_top must be a non-empty array of strategy names", top_field);
    }
    for (const Json& n : e.at("expected_top")) {
      if (!n.is_string()) throw ParseError("expected_top entries must be strings", top_field);
      s.expected_top.push_back(n.get<std::string>());
    }
    if (e.contains("provenance")) {
      if (!e.at("provenance").is_string()) {
        throw ParseError("provenance must be a string", field + ".provenance");
      }
      s.provenance = e.at("provenance").get<std::string>();
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<ScenarioSpec> load_scenarios(const std::filesystem::path& path) {
  return parse_scenarios(load_json_file(path));
}

Json to_json(const ScenarioSpec& s) {
  Json j = {{"name", s.name},
            {"team", to_json(s.team)},
            {"state", to_json(s.state)},
            {"expected_top", s.expected_top},
            {"provenance", s.provenance}};
  if (s.opponent) j["opponent"] = to_json(*s.opponent);
  return j;
}

RankRequest scenario_request(const ScenarioSpec& spec, const ParamSet& params, CombineMode mode) {
  RankRequest r{.team = spec.team};
  if (spec.opponent) r.opponent = PartialAttributeVector(*spec.opponent);
  r.state = spec.state;
  r.params = params;
  r.mode = mode;
  return r;
}

std::mt19937_64 run_generator(std::uint64_t seed, std::uint64_t run) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(run), static_cast<std::uint32_t>(run >> 32)};
  return std::mt19937_64(seq);
}

// Scenario checks ---------------------------------------------------------------

std::vector<ScenarioResult> run_scenarios(std::span<const ScenarioSpec> fixtures,
                                          const StrategyLibrary& library,
                                          const ParamSet& params) {
  std::vector<ScenarioResult> out;
  for (const ScenarioSpec& spec : fixtures) {
    ScenarioResult r;
    r.scenario = spec.name;
    r.recommendation = rank_strategies(scenario_request(spec, params), library);
    r.passed = std::find(spec.expected_top.begin(), spec.expected_top.end(),
                         r.recommendation.chosen_name) != spec.expected_top.end();
    out.push_back(std::move(r));
  }
  return out;
}

// Monte Carlo -------------------------------------------------------------------

std::string_view to_string(NoiseModel m) {
  return m == NoiseModel::kMultiplicative ? "multiplicative" : "additive";
}

NoiseModel parse_noise_model(std::string_view text) {
  if (text == "multiplicative") return NoiseModel::kMultiplicative;
  if (text == "additive") return NoiseModel::kAdditive;
  throw ParseError("noise model must be 'multiplicative' or 'additive'", "noise");
}

void NoiseSpec::validate() const {
  if (!(sigma >= 0.0)) throw NegativeSigma("sigma must be nonnegative", "sigma");
  if (runs < 1) throw InvalidArgument("run count must be at least 1", "k");
}

std::vector<std::size_t> RobustnessReport::histogram(std::size_t library_size) const {
  std::vector<std::size_t> counts(library_size, 0);
  for (std::size_t id : chosen_per_run) {
    if (id < library_size) ++counts[id];
  }
  return counts;
}

namespace {

RobustnessReport start_report(const ScenarioSpec& spec, const Recommendation& baseline,
                              std::size_t runs) {
  RobustnessReport r;
  r.scenario = spec.name;
  r.baseline_id = baseline.chosen_id;
  r.baseline_name = baseline.chosen_name;
  r.chosen_per_run.reserve(runs);
  return r;
}

void finish_report(RobustnessReport& r) {
  r.matches = static_cast<std::size_t>(
      std::count(r.chosen_per_run.begin(), r.chosen_per_run.end(), r.baseline_id));
  r.consistency = static_cast<double>(r.matches) / static_cast<double>(r.chosen_per_run.size());
}

}  // namespace

RobustnessReport robustness(const ScenarioSpec& spec, const StrategyLibrary& library,
                            const NoiseSpec& noise, const ParamSet& params) {
  noise.validate();
  const RankRequest base = scenario_request(spec, params);
  RobustnessReport report = start_report(spec, rank_strategies(base, library), noise.runs);

  for (std::size_t k = 0; k < noise.runs; ++k) {
    std::mt19937_64 rng = run_generator(noise.seed, k);
    std::normal_distribution<double> eps(0.0, noise.sigma);
    std::array<double, kAttributeCount> values = spec.team.values();
    for (double& v : values) {
      const double e = noise.sigma == 0.0 ? 0.0 : eps(rng);
      v = noise.model == NoiseModel::kMultiplicative ? v * (1.0 + e) : v + e;
    }
    RankRequest run = base;
    run.team = AttributeVector::make(values, RangePolicy::kClamp);
    report.chosen_per_run.push_back(rank_strategies(run, library).chosen_id);
  }
  finish_report(report);
  return report;
}

RobustnessReport template_stability(const ScenarioSpec& spec, const StrategyLibrary& library,
                                    double sigma, std::size_t runs, std::uint64_t seed,
                                    const ParamSet& params) {
  NoiseSpec{sigma, runs, seed}.validate();
  const RankRequest request = scenario_request(spec, params);
  RobustnessReport report = start_report(spec, rank_strategies(request, library), runs);

  for (std::size_t k = 0; k < runs; ++k) {
    std::mt19937_64 rng = run_generator(seed, k);
    std::vector<StrategyTemplate> perturbed;
    perturbed.reserve(library.size());
    for (const StrategyTemplate& t : library) perturbed.push_back(perturb_template(t, sigma, rng));
    const StrategyLibrary noisy = StrategyLibrary::make(std::move(perturbed));
    report.chosen_per_run.push_back(rank_strategies(request, noisy).chosen_id);
  }
  finish_report(report);
  return report;
}

// Sensitivity -------------------------------------------------------------------

std::vector<double> default_alpha_grid() { return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}; }

SensitivityReport sensitivity_sweep(const ScenarioSpec& spec, const StrategyLibrary& library,
                                    std::span<const double> alphas, const ParamSet& params) {
  if (!spec.opponent) {
    throw MissingOpponent("scenario '" + spec.name + "' has no opponent vector", "opponent");
  }
  if (alphas.empty()) throw InvalidArgument("alpha grid is empty", "alphas");
  SensitivityReport report;
  report.scenario = spec.name;
  for (const StrategyTemplate& t : library) report.strategy_names.push_back(t.name);

  for (double alpha : alphas) {
    check_alpha(alpha);
    ParamSet p = params;
    p.alpha = alpha;
    const Recommendation rec = rank_strategies(scenario_request(spec, p), library);
    SensitivityRow row;
    row.alpha = alpha;
    row.chosen_id = rec.chosen_id;
    row.chosen_name = rec.chosen_name;
    for (const StrategyTemplate& t : library) row.d_comb.push_back(rec.entry_for(t.id)->d_comb);
    report.rows.push_back(std::move(row));
  }
  for (const SensitivityRow& row : report.rows) {
    report.stable = report.stable && row.chosen_id == report.rows.front().chosen_id;
  }
  return report;
}

// Ablation ----------------------------------------------------------------------

AblationReport ablation(const ScenarioSpec& spec, const StrategyLibrary& library,
                        const ParamSet& params) {
  const RankRequest base = scenario_request(spec, params);
  const Recommendation baseline = rank_strategies(base, library);
  const RankedEntry& top = baseline.chosen();

  AblationReport report;
  report.scenario = spec.name;
  report.baseline_id = baseline.chosen_id;
  report.baseline_name = baseline.chosen_name;
  for (AttributeId id : kAllAttributes) {
    RankRequest suppressed = base;
    suppressed.team = suppressed.team.with(id, 0.0);
    const Recommendation rec = rank_strategies(suppressed, library);
    AblationRow row;
    row.attribute = id;
    row.chosen_id = rec.chosen_id;
    row.chosen_name = rec.chosen_name;
    const RankedEntry* moved = rec.entry_for(top.strategy_id);
    row.top_shift = moved->d_comb - top.d_comb;
    row.top_eucl_shift = moved->d_eucl - top.d_eucl;
    for (const RankedEntry& e : baseline.entries) {
      if (rec.entry_for(e.strategy_id)->rank != e.rank) ++row.rank_changes;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

// Pilot ---------------------------------------------------------------------------

std::vector<PilotObservation> pilot_first_half() {
  using A = AttributeId;
  using L = CategoricalLevel;
  return {
      {"Offensivkraft", A::A1, L::kHigh},
      {"Direkte vertikale Angriffe", A::A4, L::kHigh},
      {"Gegenangriff", A::A4, L::kHigh},
      {"Kompakte Defensive", A::A2, L::kMedium},
      {"Restenergie", A::A8, L::kMedium},
      {"Gegenpressing", A::A5, L::kMedium},
  };
}

AttributeMask pilot_mask() {
  using A = AttributeId;
  return {A::A1, A::A2, A::A4, A::A5, A::A8};
}

ContextTree pilot_tree() {
  ContextTree tree;
  const std::vector<PilotObservation> observations = pilot_first_half();
  for (AttributeId id : pilot_mask().attributes()) {
    AggregationNode root;
    root.id = std::string(key(id));
    std::vector<std::string> leaves;
    for (const PilotObservation& o : observations) {
      if (o.attribute == id) leaves.push_back(o.leaf);
    }
    root.combiner = leaves.size() > 1 ? Combiner::kMax : Combiner::kWeighted;
    for (const std::string& leaf : leaves) {
      root.children.push_back({leaf, nullptr, 1.0 / static_cast<double>(leaves.size())});
    }
    tree.set_root(id, std::move(root));
  }
  return tree;
}

PartialAttributeVector pilot_team(const CategoricalAnchors& anchors) {
  TreeInputs inputs;
  for (const PilotObservation& o : pilot_first_half()) {
    inputs.leaves[o.leaf] = {o.leaf, from_categorical(o.level, anchors), Benchmark{0.0, 1.0}};
  }
  const PartialAttributeVector halftime = evaluate_tree(pilot_tree(), inputs, pilot_mask());
  return apply_fatigue_discount(halftime, AttributeId::A8, kPilotFatigueDiscount);
}

PilotReport pilot_replication(const CategoricalAnchors& anchors) {
  const StrategyLibrary library = builtin_canonical();
  RankRequest request{.team = pilot_team(anchors)};
  request.state = MatchState::make(0.5, 0);

  PilotReport report{request.team, {}, {}, rank_strategies(request, library)};
  report.chosen = report.recommendation.chosen_name;
  for (const RankedEntry& e : report.recommendation.entries) {
    report.rows.push_back({e.strategy_id, e.name, e.d_eucl, e.d_adapt, e.rank});
  }
  // Table order follows the baseline distance; ties keep library order.
  std::stable_sort(report.rows.begin(), report.rows.end(), [](const PilotRow& a, const PilotRow& b) {
    return a.d_eucl < b.d_eucl - kTieTolerance;
  });
  return report;
}

// JSON ----------------------------------------------------------------------------

Json to_json(const ScenarioResult& r) {
  return {{"scenario", r.scenario}, {"passed", r.passed}, {"recommendation", to_json(r.recommendation)}};
}

Json to_json(const RobustnessReport& r) {
  return {{"scenario", r.scenario},
          {"baseline_id", r.baseline_id},
          {"baseline", r.baseline_name},
          {"runs", r.chosen_per_run.size()},
          {"matches", r.matches},
          {"consistency", r.consistency},
          {"chosen_per_run", r.chosen_per_run}};
}

Json to_json(const SensitivityReport& r) {
  Json rows = Json::array();
  for (const SensitivityRow& row : r.rows) {
    rows.push_back({{"alpha", row.alpha},
                    {"chosen_id", row.chosen_id},
                    {"chosen", row.chosen_name},
                    {"d_comb", row.d_comb}});
  }
  return {{"scenario", r.scenario}, {"strategies", r.strategy_names}, {"rows", rows},
          {"stable", r.stable}};
}

Json to_json(const AblationReport& r) {
  Json rows = Json::array();
  for (const AblationRow& row : r.rows) {
    rows.push_back({{"attribute", std::string(key(row.attribute))},
                    {"chosen_id", row.chosen_id},
                    {"chosen", row.chosen_name},
                    {"top_shift", row.top_shift},
                    {"top_eucl_shift", row.top_eucl_shift},
                    {"rank_changes", row.rank_changes}});
  }
  return {{"scenario", r.scenario},
          {"baseline_id", r.baseline_id},
          {"baseline", r.baseline_name},
          {"rows", rows}};
}

Json to_json(const PilotReport& r) {
  Json rows = Json::array();
  for (const PilotRow& row : r.rows) {
    rows.push_back({{"id", row.strategy_id},
                    {"name", row.name},
                    {"d_eucl", row.d_eucl},
                    {"d_adapt", row.d_adapt},
                    {"rank", row.rank}});
  }
  return {{"team", to_json(r.team)},
          {"rows", rows},
          {"chosen", r.chosen},
          {"recommendation", to_json(r.recommendation)}};
}

// CSV -----------------------------------------------------------------------------

void write_radar_csv(std::ostream& out, const PartialAttributeVector& team,
                     const StrategyTemplate& strategy) {
  const PartialAttributeVector profile = project(strategy.profile, team.mask());
  out << "attribute,team,strategy\n";
  for (AttributeId id : team.mask().attributes()) {
    out << key(id) << ',' << num(team.at(id)) << ',' << num(profile.at(id)) << '\n';
  }
}

void write_sensitivity_csv(std::ostream& out, std::span<const SensitivityReport> reports) {
  out << "scenario,alpha,strategy,d_comb,chosen\n";
  for (const SensitivityReport& r : reports) {
    for (const SensitivityRow& row : r.rows) {
      for (std::size_t i = 0; i < r.strategy_names.size(); ++i) {
        out << csv_field(r.scenario) << ',' << num(row.alpha) << ','
            << csv_field(r.strategy_names[i]) << ',' << num(row.d_comb[i]) << ','
            << (i == row.chosen_id ? 1 : 0) << '\n';
      }
    }
  }
}

void write_robustness_csv(std::ostream& out, std::span<const RobustnessReport> input_noise,
                          std::span<const RobustnessReport> template_noise,
                          const StrategyLibrary& library) {
  out << "scenario,kind,strategy,count\n";
  auto emit = [&](std::span<const RobustnessReport> reports, std::string_view kind) {
    for (const RobustnessReport& r : reports) {
      const std::vector<std::size_t> counts = r.histogram(library.size());
      for (const StrategyTemplate& t : library) {
        out << csv_field(r.scenario) << ',' << kind << ',' << csv_field(t.name) << ','
            << counts[t.id] << '\n';
      }
    }
  };
  emit(input_noise, "input_noise");
  emit(template_noise, "template_noise");
}

void write_ablation_csv(std::ostream& out, std::span<const AblationReport> reports) {
  out << "scenario,attribute,chosen,top_shift,top_eucl_shift,rank_changes\n";
  for (const AblationReport& r : reports) {
    for (const AblationRow& row : r.rows) {
      out << csv_field(r.scenario) << ',' << key(row.attribute) << ','
          << csv_field(row.chosen_name) << ',' << num(row.top_shift) << ','
          << num(row.top_eucl_shift) << ',' << row.rank_changes << '\n';
    }
  }
}

std::vector<std::filesystem::path> export_figure_data(const FigureData& data,
                                                      const StrategyLibrary& library,
                                                      const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoFailure("cannot create directory '" + dir.string() + "'", dir.string());

  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& name, const std::string& body) {
    const std::filesystem::path path = dir / name;
    write_text_file(path, body);
    written.push_back(path);
  };
  for (const auto& [stem, body] : data.radar) emit("radar_" + stem + ".csv", body);
  if (!data.sensitivity.empty()) {
    std::ostringstream out;
    write_sensitivity_csv(out, data.sensitivity);
    emit("sensitivity.csv", out.str());
  }
  if (!data.robustness.empty() || !data.stability.empty()) {
    std::ostringstream out;
    write_robustness_csv(out, data.robustness, data.stability, library);
    emit("robustness.csv", out.str());
  }
  if (!data.ablation.empty()) {
    std::ostringstream out;
    write_ablation_csv(out, data.ablation);
    emit("ablation.csv", out.str());
  }
  return written;
}

}  // namespace tacfit
