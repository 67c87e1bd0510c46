#pragma once

// Baseline and context-adapted distances between profiles, the dynamic
// multiplier scheme that turns match conditions into attribute weights, and
// the two opponent-aware score combinations.

#include <array>
#include <string_view>

#include "tacfit/attribute_space.hpp"
#include "tacfit/strategy_library.hpp"

namespace tacfit {

/// Lower bound applied to every multiplier.
inline constexpr double kMultiplierFloor = 0.05;

/// Bounds of the prototype strategy multiplier.
inline constexpr double kPrototypeMultiplierMin = 0.4;
inline constexpr double kPrototypeMultiplierMax = 2.0;

struct ContextMultipliers {
  std::array<double, kAttributeCount> values;

  ContextMultipliers() { values.fill(1.0); }
  double operator[](AttributeId id) const { return values[index_of(id)]; }
  double& operator[](AttributeId id) { return values[index_of(id)]; }

  bool operator==(const ContextMultipliers&) const = default;
};

/// Technical (A12) and physical (A13) gaps, team minus opponent.
struct GapEstimate {
  double delta_tech = 0.0;
  double delta_phys = 0.0;

  bool operator==(const GapEstimate&) const = default;
};

/// Nonnegative per-attribute weights over an active mask; the weights of the
/// active attributes sum to the mask size.
class WeightVector {
 public:
  WeightVector() = default;

  /// Uniform weights (all 1) over `mask`.
  static WeightVector uniform(const AttributeMask& mask);

  const AttributeMask& mask() const { return mask_; }
  /// Zero for attributes outside the mask.
  double operator[](AttributeId id) const { return weights_[index_of(id)]; }
  double sum() const;

  bool operator==(const WeightVector&) const = default;

 private:
  friend WeightVector normalize_weights(const ContextMultipliers& m, const AttributeMask& mask);

  AttributeMask mask_;
  std::array<double, kAttributeCount> weights_{};
};

enum class CombineMode { kSubtractive, kExponential };

std::string_view to_string(CombineMode mode);
/// Throws ParseError for anything but "subtractive" / "exponential".
CombineMode parse_combine_mode(std::string_view text);

/// Plain Euclidean distance over the shared active set. Throws ShapeMismatch
/// when the masks differ.
double euclidean(const PartialAttributeVector& x, const PartialAttributeVector& y);

/// Energy, gap and urgency multipliers for the current match context.
ContextMultipliers compute_multipliers(double energy, const GapEstimate& gaps,
                                       const MatchState& state, const ParamSet& params);

/// w_j = |mask| * m_j / sum_{k in mask} m_k. Throws EmptyMask, and
/// DegenerateMultipliers when the masked sum is zero.
WeightVector normalize_weights(const ContextMultipliers& m, const AttributeMask& mask);

/// sqrt(sum_j w_j (x_j - y_j)^2). Throws ShapeMismatch when the masks differ
/// or the weights do not cover the active set.
double adapted_distance(const PartialAttributeVector& x, const PartialAttributeVector& y,
                        const WeightVector& w);

/// kSubtractive: d_team - alpha * d_opp.
/// kExponential: d_team + alpha * exp(-d_opp).
double combine(double d_team, double d_opp, double alpha, CombineMode mode);

/// clamp(1 + 2 * gamma_e * deficit * (intensity - 0.5), 0.4, 2.0), with
/// deficit = max(0, tau_e - energy). Energy-hungry templates are penalized
/// (> 1) and low-intensity templates mildly favored (< 1) once energy drops
/// below the threshold.
double prototype_multiplier(const MatchState& state, double energy, const StrategyTemplate& t,
                            const ParamSet& params);

}  // namespace tacfit
