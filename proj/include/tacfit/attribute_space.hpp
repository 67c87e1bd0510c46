#pragma once

// The shared 14-attribute space in which team states, opponents and strategy
// templates live, plus the match-state and parameter types that drive the
// dynamic weighting.

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tacfit {

inline constexpr std::size_t kAttributeCount = 14;

enum class AttributeId : std::uint8_t {
  A1 = 0,  // Offensive Strength
  A2,      // Defensive Strength
  A3,      // Midfield Control
  A4,      // Transition Speed
  A5,      // High Press Capability
  A6,      // Width Utilization
  A7,      // Psychological Resilience
  A8,      // Residual Energy
  A9,      // Team Morale
  A10,     // Time Management
  A11,     // Tactical Cohesion
  A12,     // Technical Base
  A13,     // Physical Base
  A14,     // Relational Cohesion
};

enum class AttributeCategory { kTechnical, kPhysical, kPsychological };

inline constexpr std::array<AttributeId, kAttributeCount> kAllAttributes = {
    AttributeId::A1,  AttributeId::A2,  AttributeId::A3,  AttributeId::A4,  AttributeId::A5,
    AttributeId::A6,  AttributeId::A7,  AttributeId::A8,  AttributeId::A9,  AttributeId::A10,
    AttributeId::A11, AttributeId::A12, AttributeId::A13, AttributeId::A14,
};

constexpr std::size_t index_of(AttributeId id) { return static_cast<std::size_t>(id); }

/// Throws OutOfRange for index >= 14.
AttributeId attribute_at(std::size_t index);

/// "A1" .. "A14".
std::string_view key(AttributeId id);
std::string_view display_name(AttributeId id);
AttributeCategory category(AttributeId id);
std::string_view to_string(AttributeCategory c);
std::optional<AttributeId> parse_attribute_key(std::string_view text);

/// Set of active attributes.
class AttributeMask {
 public:
  AttributeMask() = default;
  AttributeMask(std::initializer_list<AttributeId> ids);

  static AttributeMask all();

  bool contains(AttributeId id) const { return bits_.test(index_of(id)); }
  void insert(AttributeId id) { bits_.set(index_of(id)); }
  void erase(AttributeId id) { bits_.reset(index_of(id)); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool is_full() const { return bits_.all(); }
  bool is_subset_of(const AttributeMask& other) const { return (bits_ & ~other.bits_).none(); }

  /// Active attributes in ascending order.
  std::vector<AttributeId> attributes() const;

  bool operator==(const AttributeMask&) const = default;

 private:
  std::bitset<kAttributeCount> bits_;
};

/// How constructors treat components outside [0,1].
enum class RangePolicy { kReject, kClamp };

/// Validates (or clamps) a single component. `field` is used in the error.
double checked_unit(double value, RangePolicy policy, std::string_view field);

/// A point in [0,1]^14, indexed by AttributeId.
class AttributeVector {
 public:
  AttributeVector() = default;

  /// Throws WrongArity unless exactly 14 values are given and OutOfRange
  /// (naming the attribute) for components outside [0,1] under kReject.
  static AttributeVector make(std::span<const double> values,
                              RangePolicy policy = RangePolicy::kReject);
  static AttributeVector make(std::initializer_list<double> values,
                              RangePolicy policy = RangePolicy::kReject);
  static AttributeVector filled(double value);

  double operator[](AttributeId id) const { return values_[index_of(id)]; }
  const std::array<double, kAttributeCount>& values() const { return values_; }

  AttributeVector with(AttributeId id, double value,
                       RangePolicy policy = RangePolicy::kReject) const;

  bool operator==(const AttributeVector&) const = default;

 private:
  std::array<double, kAttributeCount> values_{};
};

/// A vector restricted to a non-empty subset of attributes. Full vectors
/// convert implicitly (all 14 active), so every scoring routine works on
/// both shapes uniformly.
class PartialAttributeVector {
 public:
  PartialAttributeVector(const AttributeVector& full);  // NOLINT(google-explicit-constructor)

  /// `values` lists the active components in ascending attribute order.
  static PartialAttributeVector make(const AttributeMask& mask, std::span<const double> values,
                                     RangePolicy policy = RangePolicy::kReject);
  static PartialAttributeVector make(const AttributeMask& mask,
                                     std::initializer_list<double> values,
                                     RangePolicy policy = RangePolicy::kReject);

  const AttributeMask& mask() const { return mask_; }
  bool is_full() const { return mask_.is_full(); }
  bool active(AttributeId id) const { return mask_.contains(id); }

  /// Throws InactiveAttribute for attributes outside the mask.
  double at(AttributeId id) const;
  std::optional<double> get(AttributeId id) const;

  PartialAttributeVector with(AttributeId id, double value,
                              RangePolicy policy = RangePolicy::kReject) const;

  /// Active components in ascending attribute order.
  std::vector<double> active_values() const;

  /// Throws ShapeMismatch unless all 14 attributes are active.
  AttributeVector to_full() const;

  bool operator==(const PartialAttributeVector&) const = default;

 private:
  PartialAttributeVector() = default;

  AttributeMask mask_;
  std::array<double, kAttributeCount> values_{};  // zero outside the mask
};

/// Restricts `v` to `mask`. Throws EmptyMask for an empty mask and
/// InactiveAttribute if `mask` asks for a component `v` does not carry.
PartialAttributeVector project(const PartialAttributeVector& v, const AttributeMask& mask);

// Categorical observation scale -------------------------------------------

enum class CategoricalLevel { kHigh, kMedium, kLow };

/// Unit values for the three-level observation scale. Each anchor may move at
/// most 0.10 from its default.
struct CategoricalAnchors {
  static constexpr double kDefaultHigh = 0.85;
  static constexpr double kDefaultMedium = 0.50;
  static constexpr double kDefaultLow = 0.20;
  static constexpr double kMaxShift = 0.10;

  double high = kDefaultHigh;
  double medium = kDefaultMedium;
  double low = kDefaultLow;

  void validate() const;
};

double from_categorical(CategoricalLevel level, const CategoricalAnchors& anchors = {});

/// Accepts High/Medium/Low and the German Hoch/Mittel/Niedrig (any case).
/// Throws UnknownLevel otherwise.
CategoricalLevel parse_level(std::string_view text);

// Match context -------------------------------------------------------------

enum class ScoreState : int { kLosing = -1, kDrawing = 0, kWinning = 1 };

/// Throws OutOfRange unless value is -1, 0 or +1.
ScoreState score_state_from_int(int value);

struct MatchState {
  double time_remaining = 1.0;  // 1 = kickoff, 0 = final whistle
  ScoreState score_state = ScoreState::kDrawing;
  std::optional<double> energy;  // overrides team A8 when set

  static MatchState make(double time_remaining, int score_state,
                         std::optional<double> energy = std::nullopt);
  void validate() const;

  bool operator==(const MatchState&) const = default;
};

/// Dynamic-weighting parameters. Defaults are the reference values.
struct ParamSet {
  double tau_e = 0.50;    // energy threshold
  double gamma_e = 1.50;  // energy sensitivity
  double gamma_g = 1.00;  // gap sensitivity
  double tau_t = 0.25;    // time threshold
  double gamma_t = 2.00;  // urgency sensitivity
  double alpha = 0.20;    // opponent factor

  void validate() const;

  bool operator==(const ParamSet&) const = default;
};

}  // namespace tacfit
