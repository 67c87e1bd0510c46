#include "tacfit/evaluation_runner.hpp"

#include <cctype>
#include <sstream>

#include "tacfit/errors.hpp"

namespace tacfit {

namespace {

constexpr std::array<std::pair<EvaluationKind, std::string_view>, 7> kKinds = {{
    {EvaluationKind::kScenarios, "scenarios"},
    {EvaluationKind::kRobustness, "robustness"},
    {EvaluationKind::kStability, "stability"},
    {EvaluationKind::kSensitivity, "sensitivity"},
    {EvaluationKind::kAblation, "ablation"},
    {EvaluationKind::kPilot, "pilot"},
    {EvaluationKind::kAll, "all"},
}};

std::string slug(std::string_view text) {
  std::string out;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      out += static_cast<char>(std::tolower(u));
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

std::string radar_body(const PartialAttributeVector& team, const StrategyTemplate& strategy) {
  std::ostringstream out;
  write_radar_csv(out, team, strategy);
  return out.str();
}

double mean_consistency(const std::vector<RobustnessReport>& reports) {
  if (reports.empty()) return 0.0;
  double total = 0.0;
  for (const RobustnessReport& r : reports) total += r.consistency;
  return total / static_cast<double>(reports.size());
}

Json run_scenarios_kind(std::span<const ScenarioSpec> fixtures, const StrategyLibrary& library,
                        const ParamSet& params, EvaluationOutput& out) {
  Json results = Json::array();
  std::size_t passed = 0;
  for (const ScenarioResult& r : run_scenarios(fixtures, library, params)) {
    results.push_back(to_json(r));
    passed += r.passed ? 1 : 0;
    out.checks_passed = out.checks_passed && r.passed;
    const ScenarioSpec* spec = nullptr;
    for (const ScenarioSpec& s : fixtures) {
      if (s.name == r.scenario) spec = &s;
    }
    out.figures.radar.emplace_back(slug(r.scenario),
                                   radar_body(spec->team, library[r.recommendation.chosen_id]));
  }
  return {{"results", results}, {"passed", passed}, {"total", fixtures.size()}};
}

Json run_robustness_kind(std::span<const ScenarioSpec> fixtures, const StrategyLibrary& library,
                         const ParamSet& params, const EvaluationOptions& o,
                         EvaluationOutput& out) {
  const NoiseSpec noise{o.sigma, o.runs, o.seed, o.noise};
  Json reports = Json::array();
  for (const ScenarioSpec& spec : fixtures) {
    out.figures.robustness.push_back(robustness(spec, library, noise, params));
    reports.push_back(to_json(out.figures.robustness.back()));
  }
  return {{"sigma", o.sigma},
          {"k", o.runs},
          {"seed", o.seed},
          {"noise", std::string(to_string(o.noise))},
          {"reports", reports},
          {"mean_consistency", mean_consistency(out.figures.robustness)}};
}

Json run_stability_kind(std::span<const ScenarioSpec> fixtures, const StrategyLibrary& library,
                        const ParamSet& params, const EvaluationOptions& o, EvaluationOutput& out) {
  Json reports = Json::array();
  double lowest = 1.0;
  for (const ScenarioSpec& spec : fixtures) {
    out.figures.stability.push_back(
        template_stability(spec, library, o.sigma, o.runs, o.seed, params));
    reports.push_back(to_json(out.figures.stability.back()));
    lowest = std::min(lowest, out.figures.stability.back().consistency);
  }
  return {{"sigma", o.sigma},
          {"k", o.runs},
          {"seed", o.seed},
          {"reports", reports},
          {"min_consistency", lowest}};
}

Json run_sensitivity_kind(std::span<const ScenarioSpec> fixtures, const StrategyLibrary& library,
                          const ParamSet& params, const EvaluationOptions& o,
                          EvaluationOutput& out) {
  Json reports = Json::array();
  Json skipped = Json::array();
  bool all_stable = true;
  for (const ScenarioSpec& spec : fixtures) {
    if (!spec.opponent) {
      skipped.push_back(spec.name);
      continue;
    }
    out.figures.sensitivity.push_back(sensitivity_sweep(spec, library, o.alphas, params));
    reports.push_back(to_json(out.figures.sensitivity.back()));
    all_stable = all_stable && out.figures.sensitivity.back().stable;
  }
  return {{"alphas", o.alphas}, {"reports", reports}, {"skipped", skipped}, {"stable", all_stable}};
}

Json run_ablation_kind(std::span<const ScenarioSpec> fixtures, const StrategyLibrary& library,
                       const ParamSet& params, EvaluationOutput& out) {
  Json reports = Json::array();
  for (const ScenarioSpec& spec : fixtures) {
    out.figures.ablation.push_back(ablation(spec, library, params));
    reports.push_back(to_json(out.figures.ablation.back()));
  }
  return {{"reports", reports}};
}

Json run_pilot_kind(EvaluationOutput& out) {
  const PilotReport pilot = pilot_replication();
  const StrategyLibrary canonical = builtin_canonical();
  out.figures.radar.emplace_back("pilot_" + slug(pilot.chosen),
                                 radar_body(pilot.team, *canonical.find(pilot.chosen)));
  return to_json(pilot);
}

}  // namespace

std::string_view to_string(EvaluationKind k) {
  for (const auto& [kind, name] : kKinds) {
    if (kind == k) return name;
  }
  return "unknown";
}

EvaluationKind parse_evaluation_kind(std::string_view text) {
  for (const auto& [kind, name] : kKinds) {
    if (name == text) return kind;
  }
  throw NotFound("unknown evaluation kind '" + std::string(text) +
                     "' (expected scenarios, robustness, stability, sensitivity, ablation, "
                     "pilot or all)",
                 "kind");
}

EvaluationOptions evaluation_options_from_json(const Json& j) {
  EvaluationOptions o;
  if (j.is_null()) return o;
  if (!j.is_object()) throw ParseError("evaluation options must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (k == "seed") {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
        throw ParseError("seed must be a nonnegative integer", "seed");
      }
      o.seed = v.get<std::uint64_t>();
    } else if (k == "sigma") {
      if (!v.is_number()) throw ParseError("sigma must be a number", "sigma");
      o.sigma = v.get<double>();
    } else if (k == "k") {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
        throw ParseError("k must be a positive integer", "k");
      }
      o.runs = v.get<std::size_t>();
    } else if (k == "noise") {
      if (!v.is_string()) throw ParseError("noise must be a string", "noise");
      o.noise = parse_noise_model(v.get<std::string>());
    } else if (k == "alphas") {
      if (!v.is_array() || v.empty()) throw ParseError("alphas must be a non-empty array", "alphas");
      o.alphas.clear();
      for (const Json& a : v) {
        if (!a.is_number()) throw ParseError("alphas must hold numbers", "alphas");
        o.alphas.push_back(a.get<double>());
      }
    } else if (k == "scenario") {
      if (!v.is_string()) throw ParseError("scenario must be a string", "scenario");
      o.scenario = v.get<std::string>();
    } else {
      throw ParseError("unknown key '" + k + "'", k);
    }
  }
  if (!(o.sigma >= 0.0)) throw NegativeSigma("sigma must be nonnegative", "sigma");
  return o;
}

EvaluationOutput run_evaluation(EvaluationKind kind, const EvaluationOptions& options,
                                std::span<const ScenarioSpec> fixtures,
                                const StrategyLibrary& library, const ParamSet& params) {
  std::vector<ScenarioSpec> selected(fixtures.begin(), fixtures.end());
  if (options.scenario) {
    std::erase_if(selected, [&](const ScenarioSpec& s) { return s.name != *options.scenario; });
    if (selected.empty()) {
      throw NotFound("no scenario named '" + *options.scenario + "'", "scenario");
    }
  }

  EvaluationOutput out;
  Json report = {{"kind", std::string(to_string(kind))}};
  switch (kind) {
    case EvaluationKind::kScenarios:
      report["scenarios"] = run_scenarios_kind(selected, library, params, out);
      break;
    case EvaluationKind::kRobustness:
      report["robustness"] = run_robustness_kind(selected, library, params, options, out);
      break;
    case EvaluationKind::kStability:
      report["stability"] = run_stability_kind(selected, library, params, options, out);
      break;
    case EvaluationKind::kSensitivity:
      report["sensitivity"] = run_sensitivity_kind(selected, library, params, options, out);
      break;
    case EvaluationKind::kAblation:
      report["ablation"] = run_ablation_kind(selected, library, params, out);
      break;
    case EvaluationKind::kPilot:
      report["pilot"] = run_pilot_kind(out);
      break;
    case EvaluationKind::kAll:
      report["scenarios"] = run_scenarios_kind(selected, library, params, out);
      report["robustness"] = run_robustness_kind(selected, library, params, options, out);
      report["stability"] = run_stability_kind(selected, library, params, options, out);
      report["sensitivity"] = run_sensitivity_kind(selected, library, params, options, out);
      report["ablation"] = run_ablation_kind(selected, library, params, out);
      report["pilot"] = run_pilot_kind(out);
      break;
  }
  report["checks_passed"] = out.checks_passed;
  out.report = std::move(report);
  return out;
}

}  // namespace tacfit
