#pragma once

// Three-level aggregation of raw observables into the 14 macro-attributes:
// leaves are min-max normalized against a benchmark, role-level nodes combine
// their children, and one root per attribute yields the attribute value.

#include <array>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tacfit/attribute_space.hpp"

namespace tacfit {

struct Benchmark {
  double min = 0.0;
  double max = 1.0;
};

struct LeafMetric {
  std::string id;
  double raw = 0.0;
  Benchmark benchmark;
};

/// clamp((raw - min) / (max - min), 0, 1). Throws DegenerateBenchmark when
/// max <= min.
double normalize_leaf(double raw, const Benchmark& benchmark);

/// Tolerance on the sum of child weights.
inline constexpr double kWeightSumTolerance = 1e-9;

/// Weighted sum of child values. Throws WeightSumViolation when the weights do
/// not sum to one, InvalidArgument on negative weights or a size mismatch,
/// and OutOfRange for values outside [0,1].
double aggregate_node(std::span<const double> values, std::span<const double> weights);

enum class Combiner { kWeighted, kMax };

struct AggregationNode;

struct NodeChild {
  std::string leaf;                             // leaf reference, or
  std::shared_ptr<const AggregationNode> node;  // nested node
  double weight = 1.0;                          // ignored by kMax
};

struct AggregationNode {
  std::string id;
  Combiner combiner = Combiner::kWeighted;
  std::vector<NodeChild> children;
};

/// Marker for an attribute supplied directly as a normalized score.
struct DirectSupply {};

using AttributeSource = std::variant<DirectSupply, AggregationNode>;

class ContextTree {
 public:
  /// Every attribute starts as direct supply.
  ContextTree();

  /// Validates the subtree (non-empty children, simplex weights for weighted
  /// nodes, no leaf or node reused inside the subtree) and installs it.
  /// Throws InvalidTree / WeightSumViolation.
  void set_root(AttributeId id, AggregationNode root);
  void set_direct(AttributeId id);

  const AttributeSource& source(AttributeId id) const { return sources_[index_of(id)]; }
  bool is_direct(AttributeId id) const;

  /// Leaf ids referenced anywhere in the tree, sorted.
  std::vector<std::string> leaf_ids() const;

 private:
  std::array<AttributeSource, kAttributeCount> sources_;
};

struct TreeInputs {
  std::map<std::string, LeafMetric> leaves;
  std::map<AttributeId, double> direct;
};

/// Bottom-up evaluation over all 14 attributes. Throws MissingLeaf(id) /
/// MissingDirect(attribute).
AttributeVector evaluate_tree(const ContextTree& tree, const TreeInputs& inputs);

/// Evaluates only the attributes in `mask`; inputs for other attributes are
/// not required.
PartialAttributeVector evaluate_tree(const ContextTree& tree, const TreeInputs& inputs,
                                     const AttributeMask& mask);

/// Replaces one component with clamp(value + delta, 0, 1). Throws
/// InactiveAttribute when the attribute is not active.
PartialAttributeVector apply_fatigue_discount(const PartialAttributeVector& v, AttributeId id,
                                              double delta);
AttributeVector apply_fatigue_discount(const AttributeVector& v, AttributeId id, double delta);

}  // namespace tacfit
