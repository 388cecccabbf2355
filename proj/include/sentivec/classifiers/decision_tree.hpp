#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "sentivec/classifiers/common.hpp"

namespace sentivec {

struct DecisionTreeConfig {
  std::size_t max_depth = 0;  // 0 = unbounded
  std::size_t min_leaf = 1;

  bool operator==(const DecisionTreeConfig&) const = default;
};

// Nodes are stored flat; test nodes route x[feature] <= threshold to `left`,
// otherwise `right`. Decision nodes carry the class label.
struct TreeNode {
  bool is_leaf = true;
  Polarity label = Polarity::Positive;
  std::uint32_t feature = 0;
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
};

struct DecisionTreeModel {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  std::size_t dimension = 0;

  std::size_t node_count() const { return nodes.size(); }

  std::size_t depth() const {
    if (nodes.empty()) return 0;
    return depth_below(0);
  }

 private:
  std::size_t depth_below(std::size_t i) const {
    const TreeNode& node = nodes[i];
    if (node.is_leaf) return 0;
    return 1 + std::max(depth_below(static_cast<std::size_t>(node.left)),
                        depth_below(static_cast<std::size_t>(node.right)));
  }
};

// Gini impurity of a two-class node.
inline double gini_impurity(std::size_t pos, std::size_t neg) {
  std::size_t total = pos + neg;
  if (total == 0) return 0.0;
  double p = static_cast<double>(pos) / static_cast<double>(total);
  double q = static_cast<double>(neg) / static_cast<double>(total);
  return 1.0 - p * p - q * q;
}

namespace dtree_detail {

struct SplitChoice {
  bool found = false;
  std::uint32_t feature = 0;
  double threshold = 0.0;
  double weighted_impurity = 0.0;
};

// Best (feature, threshold) by weighted child Gini over midpoints of sorted
// distinct values. Ties keep the first candidate so training is
// deterministic. Any valid split is acceptable even at zero gain: an impure
// node must keep splitting while progress is possible.
template <typename V>
SplitChoice best_split(const FeatureMatrix<V>& data,
                       const std::vector<std::size_t>& members,
                       std::size_t min_leaf) {
  SplitChoice best;
  const std::size_t dim = data.dimension();
  const std::size_t n = members.size();

  std::vector<std::pair<double, bool>> column(n);  // (value, is_positive)
  std::size_t total_pos = 0;
  for (std::size_t idx : members)
    if (data.labels[idx] == Polarity::Positive) ++total_pos;

  for (std::uint32_t f = 0; f < dim; ++f) {
    for (std::size_t r = 0; r < n; ++r) {
      column[r] = {data.rows[members[r]].value_at(f),
                   data.labels[members[r]] == Polarity::Positive};
    }
    std::sort(column.begin(), column.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (column.front().first == column.back().first) continue;  // constant

    std::size_t left_pos = 0;
    for (std::size_t r = 0; r + 1 < n; ++r) {
      if (column[r].second) ++left_pos;
      if (column[r].first == column[r + 1].first) continue;  // not a boundary
      std::size_t left_n = r + 1;
      std::size_t right_n = n - left_n;
      if (left_n < min_leaf || right_n < min_leaf) continue;

      std::size_t right_pos = total_pos - left_pos;
      double impurity =
          (static_cast<double>(left_n) * gini_impurity(left_pos, left_n - left_pos) +
           static_cast<double>(right_n) *
               gini_impurity(right_pos, right_n - right_pos)) /
          static_cast<double>(n);
      if (!best.found || impurity < best.weighted_impurity) {
        best.found = true;
        best.feature = f;
        best.threshold = 0.5 * (column[r].first + column[r + 1].first);
        best.weighted_impurity = impurity;
      }
    }
  }
  return best;
}

inline Polarity majority_label(std::size_t pos, std::size_t neg) {
  return pos >= neg ? Polarity::Positive : Polarity::Negative;  // tie -> Positive
}

template <typename V>
std::int32_t build_node(const FeatureMatrix<V>& data,
                        const std::vector<std::size_t>& members, std::size_t depth,
                        const DecisionTreeConfig& config, DecisionTreeModel& model) {
  std::size_t pos = 0;
  for (std::size_t idx : members)
    if (data.labels[idx] == Polarity::Positive) ++pos;
  std::size_t neg = members.size() - pos;

  auto index = static_cast<std::int32_t>(model.nodes.size());
  model.nodes.emplace_back();

  bool depth_capped = config.max_depth > 0 && depth >= config.max_depth;
  if (pos == 0 || neg == 0 || depth_capped || members.size() < config.min_leaf) {
    model.nodes[static_cast<std::size_t>(index)].label =
        majority_label(pos, neg);
    return index;
  }

  SplitChoice split = best_split(data, members, config.min_leaf);
  if (!split.found) {
    model.nodes[static_cast<std::size_t>(index)].label = majority_label(pos, neg);
    return index;
  }

  std::vector<std::size_t> left_members, right_members;
  for (std::size_t idx : members) {
    if (data.rows[idx].value_at(split.feature) <= split.threshold)
      left_members.push_back(idx);
    else
      right_members.push_back(idx);
  }

  std::int32_t left = build_node(data, left_members, depth + 1, config, model);
  std::int32_t right = build_node(data, right_members, depth + 1, config, model);

  TreeNode& node = model.nodes[static_cast<std::size_t>(index)];
  node.is_leaf = false;
  node.feature = split.feature;
  node.threshold = split.threshold;
  node.left = left;
  node.right = right;
  return index;
}

}  // namespace dtree_detail

// CART-style recursive partitioning minimizing Gini impurity.
template <typename V>
DecisionTreeModel train_decision_tree(const FeatureMatrix<V>& data,
                                      const DecisionTreeConfig& config) {
  data.validate_for_training();
  DecisionTreeModel model;
  model.dimension = data.dimension();
  std::vector<std::size_t> members(data.size());
  for (std::size_t i = 0; i < members.size(); ++i) members[i] = i;
  dtree_detail::build_node(data, members, 0, config, model);
  return model;
}

// Walks test nodes to a decision node.
template <typename V>
Polarity predict_decision_tree(const DecisionTreeModel& model, const V& x) {
  if (model.nodes.empty()) throw ArgumentError("predict_decision_tree: empty model");
  if (x.dimension() != model.dimension)
    throw ArgumentError("predict_decision_tree: dimension mismatch");
  std::size_t i = 0;
  while (!model.nodes[i].is_leaf) {
    const TreeNode& node = model.nodes[i];
    i = static_cast<std::size_t>(x.value_at(node.feature) <= node.threshold
                                     ? node.left
                                     : node.right);
  }
  return model.nodes[i].label;
}

}  // namespace sentivec
