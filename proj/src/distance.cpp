#include "tacfit/distance.hpp"

#include <algorithm>
#include <cmath>

#include "tacfit/errors.hpp"

namespace tacfit {

WeightVector WeightVector::uniform(const AttributeMask& mask) {
  return normalize_weights(ContextMultipliers{}, mask);
}

double WeightVector::sum() const {
  double s = 0.0;
  for (AttributeId id : mask_.attributes()) s += weights_[index_of(id)];
  return s;
}

std::string_view to_string(CombineMode mode) {
  return mode == CombineMode::kSubtractive ? "subtractive" : "exponential";
}

CombineMode parse_combine_mode(std::string_view text) {
  if (text == "subtractive") return CombineMode::kSubtractive;
  if (text == "exponential") return CombineMode::kExponential;
  throw ParseError("combine_mode must be 'subtractive' or 'exponential' (got '" +
                       std::string(text) + "')",
                   "combine_mode");
}

namespace {

void require_same_shape(const PartialAttributeVector& x, const PartialAttributeVector& y) {
  if (x.mask() != y.mask()) {
    throw ShapeMismatch("vectors have different active attribute sets (" +
                        std::to_string(x.mask().size()) + " vs " +
                        std::to_string(y.mask().size()) + " attributes)");
  }
}

}  // namespace

double euclidean(const PartialAttributeVector& x, const PartialAttributeVector& y) {
  require_same_shape(x, y);
  double acc = 0.0;
  for (AttributeId id : x.mask().attributes()) {
    const double d = x.at(id) - y.at(id);
    acc += d * d;
  }
  return std::sqrt(acc);
}

ContextMultipliers compute_multipliers(double energy, const GapEstimate& gaps,
                                       const MatchState& state, const ParamSet& params) {
  using A = AttributeId;
  ContextMultipliers m;

  const double energy_deficit = std::max(0.0, params.tau_e - energy);
  m[A::A5] = 1.0 - params.gamma_e * energy_deficit;
  m[A::A10] = 1.0 + params.gamma_e * energy_deficit;
  m[A::A13] = 1.0 - 0.5 * params.gamma_e * energy_deficit;

  const double tech_shortfall = std::max(0.0, -gaps.delta_tech);
  const double phys_shortfall = std::max(0.0, -gaps.delta_phys);
  m[A::A2] = 1.0 + params.gamma_g * tech_shortfall;
  m[A::A11] = 1.0 + params.gamma_g * phys_shortfall;
  m[A::A1] = 1.0 - 0.5 * params.gamma_g * tech_shortfall;
  m[A::A6] = 1.0 - 0.5 * params.gamma_g * phys_shortfall;

  const bool needs_result = state.score_state != ScoreState::kWinning;
  const double urgency = needs_result ? std::max(0.0, params.tau_t - state.time_remaining) : 0.0;
  m[A::A4] = 1.0 + params.gamma_t * urgency;
  m[A::A1] += params.gamma_t * urgency;

  for (double& v : m.values) v = std::max(v, kMultiplierFloor);
  return m;
}

WeightVector normalize_weights(const ContextMultipliers& m, const AttributeMask& mask) {
  if (mask.empty()) throw EmptyMask("weight mask is empty");
  double total = 0.0;
  for (AttributeId id : mask.attributes()) {
    if (!(m[id] >= 0.0)) {
      throw DegenerateMultipliers(std::string("multiplier for ") + std::string(key(id)) +
                                  " is negative");
    }
    total += m[id];
  }
  if (!(total > 0.0)) throw DegenerateMultipliers("masked multipliers sum to zero");

  WeightVector w;
  w.mask_ = mask;
  const double scale = static_cast<double>(mask.size()) / total;
  for (AttributeId id : mask.attributes()) w.weights_[index_of(id)] = m[id] * scale;
  return w;
}

double adapted_distance(const PartialAttributeVector& x, const PartialAttributeVector& y,
                        const WeightVector& w) {
  require_same_shape(x, y);
  if (!x.mask().is_subset_of(w.mask())) {
    throw ShapeMismatch("weight vector does not cover every active attribute");
  }
  double acc = 0.0;
  for (AttributeId id : x.mask().attributes()) {
    const double d = x.at(id) - y.at(id);
    acc += w[id] * d * d;
  }
  return std::sqrt(acc);
}

double combine(double d_team, double d_opp, double alpha, CombineMode mode) {
  switch (mode) {
    case CombineMode::kSubtractive:
      return d_team - alpha * d_opp;
    case CombineMode::kExponential:
      return d_team + alpha * std::exp(-d_opp);
  }
  return d_team;
}

double prototype_multiplier(const MatchState& /*state*/, double energy, const StrategyTemplate& t,
                            const ParamSet& params) {
  const double energy_deficit = std::max(0.0, params.tau_e - energy);
  const double mu = 1.0 + 2.0 * params.gamma_e * energy_deficit * (t.intensity() - 0.5);
  return std::clamp(mu, kPrototypeMultiplierMin, kPrototypeMultiplierMax);
}

}  // namespace tacfit
