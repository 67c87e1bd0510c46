// tacfit: command-line front end for ranking, evaluation, tree aggregation
// and the HTTP service.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "httplib.h"
#include "tacfit/errors.hpp"
#include "tacfit/evaluation_runner.hpp"
#include "tacfit/json_io.hpp"
#include "tacfit/service/service.hpp"

#ifndef TACFIT_DATA_DIR
#define TACFIT_DATA_DIR "data"
#endif

namespace {

using namespace tacfit;

constexpr int kExitFailedChecks = 1;
constexpr int kExitInvalidInput = 2;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

StrategyLibrary library_or_builtin(const std::string& path) {
  if (path.empty()) return builtin_canonical();
  LoadedLibrary loaded = load_library(path);
  for (const std::string& w : loaded.warnings) std::cerr << "warning: " << w << '\n';
  return std::move(loaded.library);
}

// recommend --------------------------------------------------------------------

struct RecommendArgs {
  std::string team;
  std::string opp;
  std::string library;
  std::string config;
  std::optional<double> time_remaining;
  std::optional<int> score_state;
  std::optional<double> energy;
  std::optional<double> alpha;
  std::optional<std::string> combine_mode;
  std::uint64_t seed = kDefaultSeed;
  std::string json_out;
};

RankRequest build_request(const RecommendArgs& a) {
  RankRequest r{.team = profile_from_json(load_json_file(a.team), "team")};
  if (!a.opp.empty()) r.opponent = profile_from_json(load_json_file(a.opp), "opponent");

  ScoringConfig config;
  if (!a.config.empty()) config = config_from_json(load_json_file(a.config), "config");
  if (a.alpha) config.params.alpha = *a.alpha;
  if (a.combine_mode) config.mode = parse_combine_mode(*a.combine_mode);
  config.params.validate();
  r.params = config.params;
  r.mode = config.mode;

  if (a.time_remaining) {
    r.state.time_remaining = checked_unit(*a.time_remaining, RangePolicy::kReject, "time-remaining");
  }
  if (a.score_state) {
    try {
      r.state.score_state = score_state_from_int(*a.score_state);
    } catch (const OutOfRange& e) {
      throw OutOfRange(e.what(), "score-state");
    }
  }
  if (a.energy) r.state.energy = checked_unit(*a.energy, RangePolicy::kReject, "energy");
  return r;
}

void print_recommendation(std::ostream& out, const Recommendation& rec) {
  out << "rank  strategy                  d_eucl   d_adapt  d_opp    d_comb   mu\n";
  for (const RankedEntry& e : rec.entries) {
    char line[160];
    std::snprintf(line, sizeof line, "%-5zu %-25s %-8.4f %-8.4f %-8.4f %-8.4f %.3f\n", e.rank,
                  e.name.c_str(), e.d_eucl, e.d_adapt, e.d_opp, e.d_comb, e.mu);
    out << line;
  }
  out << "\nchosen: " << rec.chosen_name << '\n';
  out << "energy " << fmt("%.3f", rec.energy) << "  alpha " << fmt("%.3f", rec.alpha)
      << "  mode " << to_string(rec.mode) << '\n';
  out << "\ndiagnostics for " << rec.diagnostics.strategy_name << ":\n";
  for (const AttributeDiagnostic& d : rec.diagnostics.items) {
    char line[160];
    std::snprintf(line, sizeof line, "  %-4s %-26s team %.2f  strategy %.2f  delta %+.2f  %s\n",
                  std::string(key(d.attribute)).c_str(),
                  std::string(display_name(d.attribute)).c_str(), d.team, d.strategy, d.delta,
                  std::string(to_string(d.classification)).c_str());
    out << line;
  }
}

int run_recommend(const RecommendArgs& a) {
  const RankRequest request = build_request(a);
  const StrategyLibrary library = library_or_builtin(a.library);
  const Recommendation rec = rank_strategies(request, library);
  if (a.json_out == "-") {
    std::cout << dump(to_json(rec));
    return 0;
  }
  print_recommendation(std::cout, rec);
  if (!a.json_out.empty()) write_text_file(a.json_out, dump(to_json(rec)));
  return 0;
}

// evaluate ---------------------------------------------------------------------

struct EvaluateArgs {
  std::string kind;
  std::string fixtures = TACFIT_DATA_DIR "/scenarios.json";
  std::string library;
  std::string scenario;
  std::uint64_t seed = kDefaultSeed;
  double sigma = 0.05;
  std::size_t runs = 100;
  std::vector<double> alphas = default_alpha_grid();
  std::string noise = "multiplicative";
  std::string out_dir;
};

void print_summary(std::ostream& out, const Json& report) {
  if (report.contains("scenarios")) {
    const Json& s = report["scenarios"];
    out << "scenarios: " << s["passed"].get<std::size_t>() << '/' << s["total"].get<std::size_t>()
        << " expected-top checks passed\n";
    for (const Json& r : s["results"]) {
      out << "  " << r["scenario"].get<std::string>() << " -> "
          << r["recommendation"]["chosen"].get<std::string>()
          << (r["passed"].get<bool>() ? "  ok" : "  FAILED") << '\n';
    }
  }
  if (report.contains("robustness")) {
    const Json& s = report["robustness"];
    out << "input-noise robustness (" << s["noise"].get<std::string>() << ", sigma "
        << fmt("%g", s["sigma"].get<double>()) << ", k " << s["k"].get<std::size_t>() << "):\n";
    for (const Json& r : s["reports"]) {
      out << "  " << r["scenario"].get<std::string>() << "  R = "
          << fmt("%.3f", r["consistency"].get<double>()) << '\n';
    }
    out << "  mean R = " << fmt("%.3f", s["mean_consistency"].get<double>()) << '\n';
  }
  if (report.contains("stability")) {
    const Json& s = report["stability"];
    out << "template stability (sigma " << fmt("%g", s["sigma"].get<double>()) << ", k "
        << s["k"].get<std::size_t>() << "):\n";
    for (const Json& r : s["reports"]) {
      out << "  " << r["scenario"].get<std::string>() << "  "
          << fmt("%.3f", r["consistency"].get<double>()) << '\n';
    }
  }
  if (report.contains("sensitivity")) {
    const Json& s = report["sensitivity"];
    out << "alpha sensitivity:\n";
    for (const Json& r : s["reports"]) {
      out << "  " << r["scenario"].get<std::string>() << "  "
          << (r["stable"].get<bool>() ? "stable" : "unstable") << " ->";
      for (const Json& row : r["rows"]) out << ' ' << row["chosen"].get<std::string>() << ';';
      out << '\n';
    }
    for (const Json& name : s["skipped"]) {
      out << "  " << name.get<std::string>() << "  skipped (no opponent)\n";
    }
  }
  if (report.contains("ablation")) {
    out << "ablation (attribute set to 0):\n";
    for (const Json& r : report["ablation"]["reports"]) {
      out << "  " << r["scenario"].get<std::string>() << " (baseline "
          << r["baseline"].get<std::string>() << "):";
      for (const Json& row : r["rows"]) {
        if (row["chosen_id"] != r["baseline_id"]) {
          out << ' ' << row["attribute"].get<std::string>() << "->" << row["chosen"].get<std::string>();
        }
      }
      out << '\n';
    }
  }
  if (report.contains("pilot")) {
    const Json& p = report["pilot"];
    out << "pilot halftime distances:\n";
    for (const Json& row : p["rows"]) {
      char line[128];
      std::snprintf(line, sizeof line, "  %-22s d_eucl %.4f  d_adapt %.4f\n",
                    row["name"].get<std::string>().c_str(), row["d_eucl"].get<double>(),
                    row["d_adapt"].get<double>());
      out << line;
    }
    out << "  recommended: " << p["chosen"].get<std::string>() << '\n';
  }
}

int run_evaluate(const EvaluateArgs& a) {
  const EvaluationKind kind = parse_evaluation_kind(a.kind);
  EvaluationOptions options;
  options.seed = a.seed;
  options.sigma = a.sigma;
  options.runs = a.runs;
  options.alphas = a.alphas;
  options.noise = parse_noise_model(a.noise);
  if (!a.scenario.empty()) options.scenario = a.scenario;
  if (!(options.sigma >= 0.0)) throw NegativeSigma("sigma must be nonnegative", "sigma");
  if (options.runs < 1) throw InvalidArgument("k must be at least 1", "k");

  std::vector<ScenarioSpec> fixtures;
  if (kind != EvaluationKind::kPilot) fixtures = load_scenarios(a.fixtures);
  const StrategyLibrary library = library_or_builtin(a.library);

  const EvaluationOutput result = run_evaluation(kind, options, fixtures, library);
  print_summary(std::cout, result.report);
  if (!a.out_dir.empty()) {
    std::filesystem::create_directories(a.out_dir);
    write_text_file(std::filesystem::path(a.out_dir) / "report.json", dump(result.report));
    for (const auto& path : export_figure_data(result.figures, library, a.out_dir)) {
      std::cout << "wrote " << path.string() << '\n';
    }
  }
  return result.checks_passed ? 0 : kExitFailedChecks;
}

// aggregate --------------------------------------------------------------------

struct AggregateArgs {
  std::string tree;
  std::string benchmarks;
  std::string leaves;
  std::string direct;
  std::string json_out;
};

int run_aggregate(const AggregateArgs& a) {
  const ContextTree tree = tree_from_json(load_json_file(a.tree));
  const Json direct = a.direct.empty() ? Json() : load_json_file(a.direct);
  const TreeInputs inputs =
      tree_inputs_from_json(load_json_file(a.leaves), load_json_file(a.benchmarks), direct);
  const AttributeVector v = evaluate_tree(tree, inputs);
  for (AttributeId id : kAllAttributes) {
    char line[96];
    std::snprintf(line, sizeof line, "%-4s %-26s %.4f\n", std::string(key(id)).c_str(),
                  std::string(display_name(id)).c_str(), v[id]);
    std::cout << line;
  }
  if (!a.json_out.empty()) write_text_file(a.json_out, dump(to_json(v)));
  return 0;
}

// serve ------------------------------------------------------------------------

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string library;
  std::string fixtures = TACFIT_DATA_DIR "/scenarios.json";
  std::string sessions_dir = "sessions";
};

int run_serve(const ServeArgs& a) {
  service::ServiceConfig config;
  if (!a.library.empty()) config.library_path = a.library;
  if (!a.fixtures.empty()) config.fixtures_path = a.fixtures;
  config.sessions_dir = a.sessions_dir;
  service::Service svc(config);

  httplib::Server server;
  service::bind_routes(server, svc);
  std::cerr << "listening on " << a.host << ':' << a.port << '\n';
  if (!server.listen(a.host, a.port)) {
    throw IoFailure("cannot listen on " + a.host + ":" + std::to_string(a.port), "port");
  }
  return 0;
}

int report_error(const Error& e) {
  std::cerr << "error: " << e.kind();
  if (!e.field().empty()) std::cerr << " [" << e.field() << ']';
  std::cerr << ": " << e.what() << '\n';
  return kExitInvalidInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Context-adapted tactical strategy ranking"};
  app.require_subcommand(1);

  RecommendArgs rec;
  CLI::App* recommend = app.add_subcommand("recommend", "Rank strategies for a team profile");
  recommend->add_option("--team", rec.team, "Team profile JSON")->required();
  recommend->add_option("--opp", rec.opp, "Opponent profile JSON");
  recommend->add_option("--library", rec.library, "Strategy library JSON (default: built-in five)");
  recommend->add_option("--config", rec.config, "Scoring config JSON");
  recommend->add_option("--time-remaining", rec.time_remaining, "Fraction of the match left");
  recommend->add_option("--score-state", rec.score_state, "-1 trailing, 0 level, 1 leading");
  recommend->add_option("--energy", rec.energy, "Energy override in [0,1]");
  recommend->add_option("--alpha", rec.alpha, "Opponent term weight");
  recommend->add_option("--combine-mode", rec.combine_mode, "subtractive or exponential");
  recommend->add_option("--seed", rec.seed, "Accepted for interface symmetry; ranking is not random");
  recommend->add_option("--json", rec.json_out, "Write the recommendation JSON here (- for stdout only)");

  EvaluateArgs ev;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Run the evaluation harness");
  evaluate->add_option("kind", ev.kind,
                       "scenarios, robustness, stability, sensitivity, ablation, pilot or all")
      ->required();
  evaluate->add_option("--fixtures", ev.fixtures, "Scenario fixtures JSON")->capture_default_str();
  evaluate->add_option("--library", ev.library, "Strategy library JSON (default: built-in five)");
  evaluate->add_option("--scenario", ev.scenario, "Restrict to one fixture");
  evaluate->add_option("--seed", ev.seed, "Master seed")->capture_default_str();
  evaluate->add_option("--sigma", ev.sigma, "Noise standard deviation")->capture_default_str();
  evaluate->add_option("--k", ev.runs, "Runs per fixture")->capture_default_str();
  evaluate->add_option("--alphas", ev.alphas, "Alpha grid for the sensitivity sweep")->delimiter(',');
  evaluate->add_option("--noise", ev.noise, "multiplicative or additive")->capture_default_str();
  evaluate->add_option("--out-dir", ev.out_dir, "Write report.json and CSV exports here");

  AggregateArgs ag;
  CLI::App* aggregate = app.add_subcommand("aggregate", "Evaluate a context tree");
  aggregate->add_option("--tree", ag.tree, "Context tree JSON")->required();
  aggregate->add_option("--benchmarks", ag.benchmarks, "Leaf benchmarks JSON")->required();
  aggregate->add_option("--leaves", ag.leaves, "Raw leaf metrics JSON")->required();
  aggregate->add_option("--direct", ag.direct, "Directly supplied attribute scores JSON");
  aggregate->add_option("--json", ag.json_out, "Write the attribute vector JSON here");

  ServeArgs sv;
  if (const char* env = std::getenv("TACFIT_PORT")) sv.port = std::atoi(env);
  CLI::App* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--host", sv.host, "Listen address")->capture_default_str();
  serve->add_option("--port", sv.port, "Listen port (env TACFIT_PORT)")->capture_default_str();
  serve->add_option("--library", sv.library, "Strategy library JSON (default: built-in five)");
  serve->add_option("--fixtures", sv.fixtures, "Scenario fixtures JSON")->capture_default_str();
  serve->add_option("--sessions-dir", sv.sessions_dir, "Session store directory")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalidInput;
  }

  try {
    if (*recommend) return run_recommend(rec);
    if (*evaluate) return run_evaluate(ev);
    if (*aggregate) return run_aggregate(ag);
    if (*serve) return run_serve(sv);
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  return 0;
}
