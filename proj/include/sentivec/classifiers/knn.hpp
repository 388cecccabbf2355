#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "sentivec/classifiers/common.hpp"

namespace sentivec {

struct KnnConfig {
  std::size_t k = 3;

  bool operator==(const KnnConfig&) const = default;
};

// KNN just stores the training samples.
template <typename V>
struct KnnModel {
  FeatureMatrix<V> train_data;
  std::size_t k = 3;
};

template <typename V>
KnnModel<V> train_knn(FeatureMatrix<V> data, const KnnConfig& config) {
  data.validate_for_training();
  if (config.k < 1) throw ArgumentError("train_knn: k must be >= 1");
  if (config.k > data.size())
    throw ArgumentError("train_knn: k (" + std::to_string(config.k) +
                        ") exceeds training size (" + std::to_string(data.size()) +
                        ")");
  return KnnModel<V>{std::move(data), config.k};
}

// Majority vote over the k nearest training vectors by Euclidean distance.
// Equal distances rank by lower training index; vote ties go to the class of
// the single nearest neighbor.
template <typename V>
Polarity knn_predict(const KnnModel<V>& model, const V& x) {
  const auto& data = model.train_data;
  if (data.rows.empty()) throw ArgumentError("knn_predict: empty model");
  if (x.dimension() != data.dimension())
    throw ArgumentError("knn_predict: dimension mismatch");

  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    dist.emplace_back(squared_distance(data.rows[i], x), i);
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(model.k),
                    dist.end());

  std::size_t votes_pos = 0;
  for (std::size_t j = 0; j < model.k; ++j)
    if (data.labels[dist[j].second] == Polarity::Positive) ++votes_pos;

  if (votes_pos * 2 == model.k)  // tie -> nearest neighbor decides
    return data.labels[dist[0].second];
  return votes_pos * 2 > model.k ? Polarity::Positive : Polarity::Negative;
}

}  // namespace sentivec
