#pragma once

// One entry point for every harness run, shared by the CLI and the HTTP
// service so both surfaces emit identical reports.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tacfit/evaluation.hpp"

namespace tacfit {

enum class EvaluationKind { kScenarios, kRobustness, kStability, kSensitivity, kAblation, kPilot, kAll };

std::string_view to_string(EvaluationKind k);
/// Throws NotFound for unknown names.
EvaluationKind parse_evaluation_kind(std::string_view text);

struct EvaluationOptions {
  std::uint64_t seed = kDefaultSeed;
  double sigma = 0.05;
  std::size_t runs = 100;
  NoiseModel noise = NoiseModel::kMultiplicative;
  std::vector<double> alphas = default_alpha_grid();
  std::optional<std::string> scenario;  // restrict to one fixture by name
};

/// Reads {"seed", "sigma", "k", "noise", "alphas", "scenario"}; absent keys
/// keep their defaults.
EvaluationOptions evaluation_options_from_json(const Json& j);

struct EvaluationOutput {
  Json report;
  FigureData figures;
  bool checks_passed = true;  // false when a scenario misses its expected set
};

/// Throws NotFound when `options.scenario` names no fixture, plus any error of
/// the underlying harness routine.
EvaluationOutput run_evaluation(EvaluationKind kind, const EvaluationOptions& options,
                                std::span<const ScenarioSpec> fixtures,
                                const StrategyLibrary& library, const ParamSet& params = {});

}  // namespace tacfit
