#pragma once

#include <cstddef>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tacfit/attribute_space.hpp"

namespace tacfit {

enum class StrategyCategory { kOffensive, kPressing, kDefensive, kTransition, kPossession };

std::string_view to_string(StrategyCategory c);
/// Throws ParseError for unknown names.
StrategyCategory parse_category(std::string_view text);

/// Range enforced on canonical profiles.
inline constexpr double kCanonicalFloor = 0.2;
inline constexpr double kCanonicalCeiling = 0.9;

struct StrategyTemplate {
  std::size_t id = 0;  // position in the owning library
  std::string name;
  StrategyCategory category = StrategyCategory::kOffensive;
  AttributeVector profile;
  bool canonical = false;

  /// Mean of the transition-speed and pressing components; used to tell
  /// energy-hungry templates apart from conservative ones.
  double intensity() const;

  bool operator==(const StrategyTemplate&) const = default;
};

/// Ordered, immutable collection of templates. Order is load order and doubles
/// as the deterministic tie-break order when ranking.
class StrategyLibrary {
 public:
  StrategyLibrary() = default;

  /// Reassigns ids to positions. Throws DuplicateName on repeated names and
  /// OutOfRange when a canonical profile leaves [0.2, 0.9]. Non-canonical
  /// components below 0.2 are reported through `warnings` when given.
  static StrategyLibrary make(std::vector<StrategyTemplate> templates,
                              std::vector<std::string>* warnings = nullptr);

  std::span<const StrategyTemplate> templates() const { return templates_; }
  std::size_t size() const { return templates_.size(); }
  bool empty() const { return templates_.empty(); }
  const StrategyTemplate& operator[](std::size_t i) const { return templates_.at(i); }
  const StrategyTemplate* find(std::string_view name) const;

  auto begin() const { return templates_.begin(); }
  auto end() const { return templates_.end(); }

  bool operator==(const StrategyLibrary&) const = default;

 private:
  std::vector<StrategyTemplate> templates_;
};

/// The five reference templates: High Pressing, Fast Counterattack,
/// Positional Defense, Build-up Play, Gegenpressing.
StrategyLibrary builtin_canonical();

struct LoadedLibrary {
  StrategyLibrary library;
  std::vector<std::string> warnings;
};

/// Reads a JSON array of {name, category, canonical, profile:{A1..A14}}.
/// Throws ParseError / OutOfRange / DuplicateName, and IoFailure when the
/// file cannot be read.
LoadedLibrary load_library(const std::filesystem::path& path);
LoadedLibrary parse_library(std::string_view json_text);

/// Adds independent N(0, sigma^2) noise to every profile component, clamps to
/// [0,1], keeps name and id, and clears the canonical flag. Throws
/// NegativeSigma for sigma < 0.
StrategyTemplate perturb_template(const StrategyTemplate& t, double sigma, std::mt19937_64& rng);

}  // namespace tacfit
