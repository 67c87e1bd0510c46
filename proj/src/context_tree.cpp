#include "tacfit/context_tree.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "tacfit/errors.hpp"

namespace tacfit {

double normalize_leaf(double raw, const Benchmark& benchmark) {
  if (!(benchmark.max > benchmark.min)) {
    throw DegenerateBenchmark("benchmark max must exceed min");
  }
  if (std::isnan(raw)) throw InvalidArgument("leaf value is NaN");
  return std::clamp((raw - benchmark.min) / (benchmark.max - benchmark.min), 0.0, 1.0);
}

double aggregate_node(std::span<const double> values, std::span<const double> weights) {
  if (values.size() != weights.size()) {
    throw InvalidArgument("aggregate_node: " + std::to_string(values.size()) + " values but " +
                          std::to_string(weights.size()) + " weights");
  }
  if (values.empty()) throw InvalidArgument("aggregate_node: no children");
  double weight_sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvalidArgument("aggregate_node: negative child weight");
    weight_sum += w;
  }
  if (std::abs(weight_sum - 1.0) > kWeightSumTolerance) {
    throw WeightSumViolation("child weights sum to " + std::to_string(weight_sum) +
                             ", expected 1");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    acc += weights[i] * checked_unit(values[i], RangePolicy::kReject, "child value");
  }
  // Rounding can push a convex combination a hair past the hull.
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return std::clamp(acc, *lo, *hi);
}

namespace {

void validate_node(const AggregationNode& node, std::set<std::string>& seen_leaves,
                   std::set<const AggregationNode*>& seen_nodes, std::set<std::string>& node_ids) {
  if (!seen_nodes.insert(&node).second) {
    throw InvalidTree("node '" + node.id + "' appears more than once in the subtree");
  }
  if (!node.id.empty() && !node_ids.insert(node.id).second) {
    throw InvalidTree("node id '" + node.id + "' is used more than once in the subtree");
  }
  if (node.children.empty()) throw InvalidTree("node '" + node.id + "' has no children");
  double weight_sum = 0.0;
  for (const NodeChild& child : node.children) {
    const bool is_leaf = !child.leaf.empty();
    if (is_leaf == static_cast<bool>(child.node)) {
      throw InvalidTree("child of node '" + node.id +
                        "' must reference exactly one of a leaf or a node");
    }
    if (!(child.weight >= 0.0)) {
      throw InvalidTree("node '" + node.id + "' has a negative child weight");
    }
    weight_sum += child.weight;
    if (is_leaf) {
      if (!seen_leaves.insert(child.leaf).second) {
        throw InvalidTree("leaf '" + child.leaf + "' has more than one parent in the subtree");
      }
    } else {
      validate_node(*child.node, seen_leaves, seen_nodes, node_ids);
    }
  }
  if (node.combiner == Combiner::kWeighted &&
      std::abs(weight_sum - 1.0) > kWeightSumTolerance) {
    throw WeightSumViolation("child weights of node '" + node.id + "' sum to " +
                             std::to_string(weight_sum) + ", expected 1");
  }
}

void collect_leaves(const AggregationNode& node, std::set<std::string>& out) {
  for (const NodeChild& child : node.children) {
    if (child.node) {
      collect_leaves(*child.node, out);
    } else {
      out.insert(child.leaf);
    }
  }
}

double evaluate_node(const AggregationNode& node, const TreeInputs& inputs) {
  std::vector<double> values;
  std::vector<double> weights;
  values.reserve(node.children.size());
  weights.reserve(node.children.size());
  for (const NodeChild& child : node.children) {
    if (child.node) {
      values.push_back(evaluate_node(*child.node, inputs));
    } else {
      auto it = inputs.leaves.find(child.leaf);
      if (it == inputs.leaves.end()) {
        throw MissingLeaf("leaf '" + child.leaf + "' has no input value", child.leaf);
      }
      values.push_back(normalize_leaf(it->second.raw, it->second.benchmark));
    }
    weights.push_back(child.weight);
  }
  if (node.combiner == Combiner::kMax) {
    return *std::max_element(values.begin(), values.end());
  }
  return aggregate_node(values, weights);
}

double evaluate_attribute(const ContextTree& tree, const TreeInputs& inputs, AttributeId id) {
  const AttributeSource& src = tree.source(id);
  if (const auto* node = std::get_if<AggregationNode>(&src)) {
    return evaluate_node(*node, inputs);
  }
  auto it = inputs.direct.find(id);
  if (it == inputs.direct.end()) {
    throw MissingDirect(std::string(key(id)) + " is direct-supplied but no score was given",
                        std::string(key(id)));
  }
  return checked_unit(it->second, RangePolicy::kReject, key(id));
}

}  // namespace

ContextTree::ContextTree() { sources_.fill(DirectSupply{}); }

void ContextTree::set_root(AttributeId id, AggregationNode root) {
  std::set<std::string> leaves;
  std::set<const AggregationNode*> nodes;
  std::set<std::string> ids;
  validate_node(root, leaves, nodes, ids);
  sources_[index_of(id)] = std::move(root);
}

void ContextTree::set_direct(AttributeId id) { sources_[index_of(id)] = DirectSupply{}; }

bool ContextTree::is_direct(AttributeId id) const {
  return std::holds_alternative<DirectSupply>(sources_[index_of(id)]);
}

std::vector<std::string> ContextTree::leaf_ids() const {
  std::set<std::string> out;
  for (const AttributeSource& src : sources_) {
    if (const auto* node = std::get_if<AggregationNode>(&src)) collect_leaves(*node, out);
  }
  return {out.begin(), out.end()};
}

AttributeVector evaluate_tree(const ContextTree& tree, const TreeInputs& inputs) {
  std::array<double, kAttributeCount> values{};
  for (AttributeId id : kAllAttributes) {
    values[index_of(id)] = evaluate_attribute(tree, inputs, id);
  }
  return AttributeVector::make(values);
}

PartialAttributeVector evaluate_tree(const ContextTree& tree, const TreeInputs& inputs,
                                     const AttributeMask& mask) {
  if (mask.empty()) throw EmptyMask("evaluation mask is empty");
  std::vector<double> values;
  for (AttributeId id : mask.attributes()) values.push_back(evaluate_attribute(tree, inputs, id));
  return PartialAttributeVector::make(mask, values);
}

PartialAttributeVector apply_fatigue_discount(const PartialAttributeVector& v, AttributeId id,
                                              double delta) {
  const double current = v.at(id);
  return v.with(id, std::clamp(current + delta, 0.0, 1.0));
}

AttributeVector apply_fatigue_discount(const AttributeVector& v, AttributeId id, double delta) {
  return v.with(id, std::clamp(v[id] + delta, 0.0, 1.0));
}

}  // namespace tacfit
