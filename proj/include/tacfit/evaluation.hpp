#pragma once

// Experimental protocol: scenario coherence checks, Monte Carlo robustness
// under input noise, template-perturbation stability, opponent-factor
// sweeps, attribute ablation, the halftime pilot replication, and CSV export
// of the data behind the figures.
//
// Every stochastic routine is a pure function of its inputs and seed: run k
// draws from a generator seeded with (seed, k), and reports aggregate in run
// order.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "tacfit/attribute_space.hpp"
#include "tacfit/context_tree.hpp"
#include "tacfit/json_io.hpp"
#include "tacfit/recommender.hpp"
#include "tacfit/strategy_library.hpp"

namespace tacfit {

inline constexpr std::uint64_t kDefaultSeed = 41;

struct ScenarioSpec {
  std::string name;
  AttributeVector team;
  std::optional<AttributeVector> opponent;
  MatchState state;
  std::vector<std::string> expected_top;
  std::string provenance;
};

/// Throws ParseError / OutOfRange / IoFailure; an empty expected_top list is
/// a ParseError.
std::vector<ScenarioSpec> parse_scenarios(const Json& j);
std::vector<ScenarioSpec> load_scenarios(const std::filesystem::path& path);
Json to_json(const ScenarioSpec& s);

/// Scenario as a ranking request under the given parameters.
RankRequest scenario_request(const ScenarioSpec& spec, const ParamSet& params = {},
                             CombineMode mode = CombineMode::kSubtractive);

/// Generator for run `run` of a seeded experiment.
std::mt19937_64 run_generator(std::uint64_t seed, std::uint64_t run);

struct ScenarioResult {
  std::string scenario;
  Recommendation recommendation;
  bool passed = false;  // chosen strategy is in the expected-top set
};

std::vector<ScenarioResult> run_scenarios(std::span<const ScenarioSpec> fixtures,
                                          const StrategyLibrary& library,
                                          const ParamSet& params = {});

enum class NoiseModel { kMultiplicative, kAdditive };
std::string_view to_string(NoiseModel m);
NoiseModel parse_noise_model(std::string_view text);

struct NoiseSpec {
  double sigma = 0.05;
  std::size_t runs = 100;
  std::uint64_t seed = kDefaultSeed;
  NoiseModel model = NoiseModel::kMultiplicative;

  /// Throws NegativeSigma / InvalidArgument (runs < 1).
  void validate() const;
};

/// Shared shape of the input-noise and template-noise reports.
struct RobustnessReport {
  std::string scenario;
  std::size_t baseline_id = 0;
  std::string baseline_name;
  std::vector<std::size_t> chosen_per_run;
  std::size_t matches = 0;
  double consistency = 1.0;  // matches / runs

  /// How many runs chose each strategy id (index = strategy id).
  std::vector<std::size_t> histogram(std::size_t library_size) const;
};

/// Perturbs the team vector only: multiplicative x * (1 + eps) or additive
/// x + eps with eps ~ N(0, sigma^2), clamped to [0,1], then re-ranks.
RobustnessReport robustness(const ScenarioSpec& spec, const StrategyLibrary& library,
                            const NoiseSpec& noise, const ParamSet& params = {});

/// Perturbs every template with `perturb_template` each run.
RobustnessReport template_stability(const ScenarioSpec& spec, const StrategyLibrary& library,
                                    double sigma, std::size_t runs,
                                    std::uint64_t seed = kDefaultSeed,
                                    const ParamSet& params = {});

struct SensitivityRow {
  double alpha = 0.0;
  std::size_t chosen_id = 0;
  std::string chosen_name;
  std::vector<double> d_comb;  // library order
};

struct SensitivityReport {
  std::string scenario;
  std::vector<std::string> strategy_names;  // library order
  std::vector<SensitivityRow> rows;
  bool stable = true;  // same chosen strategy on every grid point
};

/// Subtractive scores per alpha. Throws MissingOpponent when the scenario has
/// no opponent and OutOfRange for alphas outside [0,1].
SensitivityReport sensitivity_sweep(const ScenarioSpec& spec, const StrategyLibrary& library,
                                    std::span<const double> alphas, const ParamSet& params = {});

/// The default grid 0.1, 0.2, ..., 0.6.
std::vector<double> default_alpha_grid();

struct AblationRow {
  AttributeId attribute;
  std::size_t chosen_id = 0;
  std::string chosen_name;
  double top_shift = 0.0;       // d_comb change of the baseline top strategy
  double top_eucl_shift = 0.0;  // d_eucl change of the baseline top strategy
  std::size_t rank_changes = 0; // strategies whose rank moved
};

struct AblationReport {
  std::string scenario;
  std::size_t baseline_id = 0;
  std::string baseline_name;
  std::vector<AblationRow> rows;  // one per attribute, ascending
};

/// Sets one team attribute to 0 at a time (templates untouched) and
/// re-ranks. The suppressed value also feeds the weight computation.
AblationReport ablation(const ScenarioSpec& spec, const StrategyLibrary& library,
                        const ParamSet& params = {});

// Halftime pilot --------------------------------------------------------------

struct PilotObservation {
  std::string leaf;  // observed attribute as recorded
  AttributeId attribute;
  CategoricalLevel level;
};

/// First-half observations of the pilot match.
std::vector<PilotObservation> pilot_first_half();
/// Attributes the pilot protocol observes: A1, A2, A4, A5, A8.
AttributeMask pilot_mask();
/// Observation tree: one leaf per observed attribute, except A4 which takes
/// the maximum of its two observations.
ContextTree pilot_tree();
/// Fatigue discount applied to A8 for the second-half projection.
inline constexpr double kPilotFatigueDiscount = -0.15;
/// Halftime team vector projected into the second half.
PartialAttributeVector pilot_team(const CategoricalAnchors& anchors = {});

struct PilotRow {
  std::size_t strategy_id = 0;
  std::string name;
  double d_eucl = 0.0;
  double d_adapt = 0.0;
  std::size_t rank = 0;
};

struct PilotReport {
  PartialAttributeVector team;
  std::vector<PilotRow> rows;  // rank order
  std::string chosen;
  Recommendation recommendation;
};

/// Canonical library, no opponent, halftime (t = 0.5, drawing).
PilotReport pilot_replication(const CategoricalAnchors& anchors = {});

// Reports as JSON ---------------------------------------------------------------

Json to_json(const ScenarioResult& r);
Json to_json(const RobustnessReport& r);
Json to_json(const SensitivityReport& r);
Json to_json(const AblationReport& r);
Json to_json(const PilotReport& r);

// Figure data -------------------------------------------------------------------

/// attribute,team,strategy — one row per active attribute.
void write_radar_csv(std::ostream& out, const PartialAttributeVector& team,
                     const StrategyTemplate& strategy);
/// scenario,alpha,strategy,d_comb,chosen — one row per (scenario, alpha, strategy).
void write_sensitivity_csv(std::ostream& out, std::span<const SensitivityReport> reports);
/// scenario,kind,strategy,count — one row per (scenario, report kind, strategy).
void write_robustness_csv(std::ostream& out, std::span<const RobustnessReport> input_noise,
                          std::span<const RobustnessReport> template_noise,
                          const StrategyLibrary& library);
/// scenario,attribute,chosen,top_shift,top_eucl_shift,rank_changes.
void write_ablation_csv(std::ostream& out, std::span<const AblationReport> reports);

struct FigureData {
  std::vector<std::pair<std::string, std::string>> radar;  // (file stem, csv body)
  std::vector<SensitivityReport> sensitivity;
  std::vector<RobustnessReport> robustness;
  std::vector<RobustnessReport> stability;
  std::vector<AblationReport> ablation;
};

/// Writes radar_<stem>.csv, sensitivity.csv, robustness.csv, ablation.csv
/// (each only when its data is present) and returns the written paths.
/// Throws IoFailure.
std::vector<std::filesystem::path> export_figure_data(const FigureData& data,
                                                      const StrategyLibrary& library,
                                                      const std::filesystem::path& dir);

}  // namespace tacfit
