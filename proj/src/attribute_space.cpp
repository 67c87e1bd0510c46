#include "tacfit/attribute_space.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "tacfit/errors.hpp"

namespace tacfit {

namespace {

struct AttributeInfo {
  std::string_view key;
  std::string_view name;
  AttributeCategory category;
};

constexpr std::array<AttributeInfo, kAttributeCount> kInfo = {{
    {"A1", "Offensive Strength", AttributeCategory::kTechnical},
    {"A2", "Defensive Strength", AttributeCategory::kTechnical},
    {"A3", "Midfield Control", AttributeCategory::kTechnical},
    {"A4", "Transition Speed", AttributeCategory::kTechnical},
    {"A5", "High Press Capability", AttributeCategory::kTechnical},
    {"A6", "Width Utilization", AttributeCategory::kTechnical},
    {"A7", "Psychological Resilience", AttributeCategory::kPsychological},
    {"A8", "Residual Energy", AttributeCategory::kPhysical},
    {"A9", "Team Morale", AttributeCategory::kPsychological},
    {"A10", "Time Management", AttributeCategory::kPsychological},
    {"A11", "Tactical Cohesion", AttributeCategory::kPsychological},
    {"A12", "Technical Base", AttributeCategory::kPhysical},
    {"A13", "Physical Base", AttributeCategory::kPhysical},
    {"A14", "Relational Cohesion", AttributeCategory::kPsychological},
}};

std::string format_value(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

AttributeId attribute_at(std::size_t index) {
  if (index >= kAttributeCount) {
    throw OutOfRange("attribute index " + std::to_string(index) + " is not in 0..13");
  }
  return static_cast<AttributeId>(index);
}

std::string_view key(AttributeId id) { return kInfo[index_of(id)].key; }
std::string_view display_name(AttributeId id) { return kInfo[index_of(id)].name; }
AttributeCategory category(AttributeId id) { return kInfo[index_of(id)].category; }

std::string_view to_string(AttributeCategory c) {
  switch (c) {
    case AttributeCategory::kTechnical:
      return "technical";
    case AttributeCategory::kPhysical:
      return "physical";
    case AttributeCategory::kPsychological:
      return "psychological";
  }
  return "unknown";
}

std::optional<AttributeId> parse_attribute_key(std::string_view text) {
  for (std::size_t i = 0; i < kAttributeCount; ++i) {
    if (kInfo[i].key == text) return static_cast<AttributeId>(i);
  }
  return std::nullopt;
}

// AttributeMask -------------------------------------------------------------

AttributeMask::AttributeMask(std::initializer_list<AttributeId> ids) {
  for (AttributeId id : ids) insert(id);
}

AttributeMask AttributeMask::all() {
  AttributeMask m;
  m.bits_.set();
  return m;
}

std::vector<AttributeId> AttributeMask::attributes() const {
  std::vector<AttributeId> out;
  out.reserve(size());
  for (AttributeId id : kAllAttributes) {
    if (contains(id)) out.push_back(id);
  }
  return out;
}

// Vectors -------------------------------------------------------------------

double checked_unit(double value, RangePolicy policy, std::string_view field) {
  if (std::isnan(value)) {
    throw OutOfRange(std::string(field) + " is NaN", std::string(field));
  }
  if (value >= 0.0 && value <= 1.0) return value;
  if (policy == RangePolicy::kClamp) return std::clamp(value, 0.0, 1.0);
  throw OutOfRange(std::string(field) + " = " + format_value(value) + " is outside [0,1]",
                   std::string(field));
}

AttributeVector AttributeVector::make(std::span<const double> values, RangePolicy policy) {
  if (values.size() != kAttributeCount) {
    throw WrongArity("expected 14 attribute values, got " + std::to_string(values.size()));
  }
  AttributeVector v;
  for (std::size_t i = 0; i < kAttributeCount; ++i) {
    v.values_[i] = checked_unit(values[i], policy, kInfo[i].key);
  }
  return v;
}

AttributeVector AttributeVector::make(std::initializer_list<double> values, RangePolicy policy) {
  return make(std::span<const double>(values.begin(), values.size()), policy);
}

AttributeVector AttributeVector::filled(double value) {
  std::array<double, kAttributeCount> values;
  values.fill(value);
  return make(values);
}

AttributeVector AttributeVector::with(AttributeId id, double value, RangePolicy policy) const {
  AttributeVector out = *this;
  out.values_[index_of(id)] = checked_unit(value, policy, key(id));
  return out;
}

PartialAttributeVector::PartialAttributeVector(const AttributeVector& full)
    : mask_(AttributeMask::all()), values_(full.values()) {}

PartialAttributeVector PartialAttributeVector::make(const AttributeMask& mask,
                                                    std::span<const double> values,
                                                    RangePolicy policy) {
  if (mask.empty()) throw EmptyMask("attribute mask is empty");
  if (values.size() != mask.size()) {
    throw WrongArity("mask has " + std::to_string(mask.size()) + " attributes but " +
                     std::to_string(values.size()) + " values were given");
  }
  PartialAttributeVector v;
  v.mask_ = mask;
  std::size_t next = 0;
  for (AttributeId id : mask.attributes()) {
    v.values_[index_of(id)] = checked_unit(values[next++], policy, key(id));
  }
  return v;
}

PartialAttributeVector PartialAttributeVector::make(const AttributeMask& mask,
                                                    std::initializer_list<double> values,
                                                    RangePolicy policy) {
  return make(mask, std::span<const double>(values.begin(), values.size()), policy);
}

double PartialAttributeVector::at(AttributeId id) const {
  if (!active(id)) {
    throw InactiveAttribute(std::string(key(id)) + " is not active in this vector",
                            std::string(key(id)));
  }
  return values_[index_of(id)];
}

std::optional<double> PartialAttributeVector::get(AttributeId id) const {
  if (!active(id)) return std::nullopt;
  return values_[index_of(id)];
}

PartialAttributeVector PartialAttributeVector::with(AttributeId id, double value,
                                                    RangePolicy policy) const {
  if (!active(id)) {
    throw InactiveAttribute(std::string(key(id)) + " is not active in this vector",
                            std::string(key(id)));
  }
  PartialAttributeVector out = *this;
  out.values_[index_of(id)] = checked_unit(value, policy, key(id));
  return out;
}

std::vector<double> PartialAttributeVector::active_values() const {
  std::vector<double> out;
  out.reserve(mask_.size());
  for (AttributeId id : mask_.attributes()) out.push_back(values_[index_of(id)]);
  return out;
}

AttributeVector PartialAttributeVector::to_full() const {
  if (!is_full()) {
    throw ShapeMismatch("vector has " + std::to_string(mask_.size()) +
                        " active attributes; a full 14-attribute vector is required");
  }
  return AttributeVector::make(values_);
}

PartialAttributeVector project(const PartialAttributeVector& v, const AttributeMask& mask) {
  if (mask.empty()) throw EmptyMask("projection mask is empty");
  std::vector<double> values;
  values.reserve(mask.size());
  for (AttributeId id : mask.attributes()) values.push_back(v.at(id));
  return PartialAttributeVector::make(mask, values);
}

// Categorical scale ---------------------------------------------------------

void CategoricalAnchors::validate() const {
  auto check = [](double value, double reference, const char* field) {
    checked_unit(value, RangePolicy::kReject, field);
    if (std::abs(value - reference) > kMaxShift + 1e-12) {
      throw OutOfRange(std::string(field) + " anchor " + format_value(value) +
                           " moves more than 0.10 from its default " + format_value(reference),
                       field);
    }
  };
  check(high, kDefaultHigh, "high");
  check(medium, kDefaultMedium, "medium");
  check(low, kDefaultLow, "low");
}

double from_categorical(CategoricalLevel level, const CategoricalAnchors& anchors) {
  anchors.validate();
  switch (level) {
    case CategoricalLevel::kHigh:
      return anchors.high;
    case CategoricalLevel::kMedium:
      return anchors.medium;
    case CategoricalLevel::kLow:
      return anchors.low;
  }
  throw UnknownLevel("unknown categorical level");
}

CategoricalLevel parse_level(std::string_view text) {
  const std::string t = lower(text);
  if (t == "high" || t == "hoch") return CategoricalLevel::kHigh;
  if (t == "medium" || t == "mittel") return CategoricalLevel::kMedium;
  if (t == "low" || t == "niedrig") return CategoricalLevel::kLow;
  throw UnknownLevel("unknown categorical level '" + std::string(text) + "'");
}

// Match context ---------------------------------------------------------------

ScoreState score_state_from_int(int value) {
  if (value < -1 || value > 1) {
    throw OutOfRange("score_state must be -1, 0 or +1 (got " + std::to_string(value) + ")",
                     "score_state");
  }
  return static_cast<ScoreState>(value);
}

MatchState MatchState::make(double time_remaining, int score_state, std::optional<double> energy) {
  MatchState s;
  s.time_remaining = time_remaining;
  s.score_state = score_state_from_int(score_state);
  s.energy = energy;
  s.validate();
  return s;
}

void MatchState::validate() const {
  checked_unit(time_remaining, RangePolicy::kReject, "time_remaining");
  score_state_from_int(static_cast<int>(score_state));
  if (energy) checked_unit(*energy, RangePolicy::kReject, "energy");
}

void ParamSet::validate() const {
  checked_unit(tau_e, RangePolicy::kReject, "tau_e");
  checked_unit(tau_t, RangePolicy::kReject, "tau_t");
  checked_unit(alpha, RangePolicy::kReject, "alpha");
  auto nonneg = [](double v, const char* field) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw OutOfRange(std::string(field) + " must be a finite nonnegative real", field);
    }
  };
  nonneg(gamma_e, "gamma_e");
  nonneg(gamma_g, "gamma_g");
  nonneg(gamma_t, "gamma_t");
}

}  // namespace tacfit
