#include "tacfit/strategy_library.hpp"

#include <array>
#include <set>
#include <sstream>

#include "tacfit/errors.hpp"
#include "tacfit/json_io.hpp"

namespace tacfit {

std::string_view to_string(StrategyCategory c) {
  switch (c) {
    case StrategyCategory::kOffensive:
      return "offensive";
    case StrategyCategory::kPressing:
      return "pressing";
    case StrategyCategory::kDefensive:
      return "defensive";
    case StrategyCategory::kTransition:
      return "transition";
    case StrategyCategory::kPossession:
      return "possession";
  }
  return "unknown";
}

StrategyCategory parse_category(std::string_view text) {
  for (StrategyCategory c :
       {StrategyCategory::kOffensive, StrategyCategory::kPressing, StrategyCategory::kDefensive,
        StrategyCategory::kTransition, StrategyCategory::kPossession}) {
    if (to_string(c) == text) return c;
  }
  throw ParseError("unknown strategy category '" + std::string(text) + "'", "category");
}

double StrategyTemplate::intensity() const {
  return (profile[AttributeId::A4] + profile[AttributeId::A5]) / 2.0;
}

StrategyLibrary StrategyLibrary::make(std::vector<StrategyTemplate> templates,
                                      std::vector<std::string>* warnings) {
  std::set<std::string> names;
  for (std::size_t i = 0; i < templates.size(); ++i) {
    StrategyTemplate& t = templates[i];
    t.id = i;
    if (t.name.empty()) throw ParseError("strategy " + std::to_string(i) + " has no name", "name");
    if (!names.insert(t.name).second) {
      throw DuplicateName("strategy name '" + t.name + "' appears more than once", "name");
    }
    for (AttributeId a : kAllAttributes) {
      const double v = t.profile[a];
      if (t.canonical && (v < kCanonicalFloor || v > kCanonicalCeiling)) {
        std::ostringstream msg;
        msg << "canonical strategy '" << t.name << "' has " << key(a) << " = " << v
            << " outside [0.2, 0.9]";
        throw OutOfRange(msg.str(), t.name + "." + std::string(key(a)));
      }
      if (!t.canonical && v < kCanonicalFloor && warnings != nullptr) {
        std::ostringstream msg;
        msg << "strategy '" << t.name << "' has " << key(a) << " = " << v
            << " below the 0.2 floor";
        warnings->push_back(msg.str());
      }
    }
  }
  StrategyLibrary lib;
  lib.templates_ = std::move(templates);
  return lib;
}

const StrategyTemplate* StrategyLibrary::find(std::string_view name) const {
  for (const StrategyTemplate& t : templates_) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

StrategyLibrary builtin_canonical() {
  //                              A1    A2    A3    A4    A5    A6    A7    A8    A9    A10   A11   A12   A13   A14
  const auto high_press = {0.70, 0.80, 0.60, 0.90, 0.90, 0.50, 0.80, 0.70, 0.80, 0.60, 0.90, 0.70, 0.80, 0.80};
  const auto fast_counter = {0.90, 0.60, 0.50, 0.90, 0.50, 0.60, 0.70, 0.80, 0.70, 0.80, 0.60, 0.70, 0.80, 0.60};
  const auto positional = {0.40, 0.90, 0.80, 0.30, 0.20, 0.30, 0.70, 0.60, 0.60, 0.90, 0.80, 0.60, 0.50, 0.70};
  const auto build_up = {0.80, 0.50, 0.70, 0.50, 0.40, 0.60, 0.70, 0.60, 0.80, 0.70, 0.80, 0.80, 0.60, 0.80};
  const auto gegenpress = {0.70, 0.80, 0.60, 0.80, 0.90, 0.50, 0.80, 0.70, 0.80, 0.60, 0.90, 0.70, 0.80, 0.80};

  std::vector<StrategyTemplate> templates = {
      {0, "High Pressing", StrategyCategory::kPressing, AttributeVector::make(high_press), true},
      {0, "Fast Counterattack", StrategyCategory::kTransition, AttributeVector::make(fast_counter), true},
      {0, "Positional Defense", StrategyCategory::kDefensive, AttributeVector::make(positional), true},
      {0, "Build-up Play", StrategyCategory::kOffensive, AttributeVector::make(build_up), true},
      {0, "Gegenpressing", StrategyCategory::kPressing, AttributeVector::make(gegenpress), true},
  };
  return StrategyLibrary::make(std::move(templates));
}

LoadedLibrary parse_library(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("library file is not valid JSON: ") + e.what());
  }
  return library_from_json(doc);
}

LoadedLibrary load_library(const std::filesystem::path& path) {
  return parse_library(read_text_file(path));
}

StrategyTemplate perturb_template(const StrategyTemplate& t, double sigma, std::mt19937_64& rng) {
  if (!(sigma >= 0.0)) throw NegativeSigma("sigma must be nonnegative", "sigma");
  StrategyTemplate out = t;
  out.canonical = false;
  if (sigma == 0.0) return out;
  std::normal_distribution<double> noise(0.0, sigma);
  std::array<double, kAttributeCount> values = t.profile.values();
  for (double& v : values) v += noise(rng);
  out.profile = AttributeVector::make(values, RangePolicy::kClamp);
  return out;
}

}  // namespace tacfit
