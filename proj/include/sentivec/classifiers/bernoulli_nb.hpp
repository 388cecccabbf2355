#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "sentivec/classifiers/common.hpp"

namespace sentivec {

struct BernoulliNbConfig {
  double alpha = 1.0;  // Laplace smoothing

  bool operator==(const BernoulliNbConfig&) const = default;
};

// Multivariate Bernoulli model over binarized features (x_i = 1 iff the
// feature value is nonzero). Parameters are kept in log space.
struct BernoulliNbModel {
  std::size_t dimension = 0;
  double log_prior_pos = 0.0;
  double log_prior_neg = 0.0;
  std::vector<double> p_pos;  // P(x_i = 1 | Positive)
  std::vector<double> p_neg;
  // Cached sum_i log(1 - p_{k,i}) so scoring touches only nonzero features.
  double base_pos = 0.0;
  double base_neg = 0.0;
};

namespace nb_detail {

inline void count_present(const SparseVector& x, std::vector<std::size_t>& counts) {
  for (const auto& [i, v] : x.entries)
    if (v != 0.0) ++counts[i];
}

inline void count_present(const DenseVector& x, std::vector<std::size_t>& counts) {
  for (std::size_t i = 0; i < x.values.size(); ++i)
    if (x.values[i] != 0.0) ++counts[i];
}

}  // namespace nb_detail

// p_{k,i} = (count(i,k) + alpha) / (n_k + 2 alpha); priors are class fractions.
template <typename V>
BernoulliNbModel train_bernoulli_nb(const FeatureMatrix<V>& data,
                                    const BernoulliNbConfig& config) {
  data.validate_for_training();
  if (!data.has_both_classes())
    throw ArgumentError("train_bernoulli_nb: need at least one example per class");
  if (config.alpha <= 0.0)
    throw ArgumentError("train_bernoulli_nb: alpha must be > 0");

  const std::size_t dim = data.dimension();
  std::vector<std::size_t> count_pos(dim, 0), count_neg(dim, 0);
  std::size_t n_pos = 0, n_neg = 0;
  for (std::size_t r = 0; r < data.size(); ++r) {
    if (data.labels[r] == Polarity::Positive) {
      ++n_pos;
      nb_detail::count_present(data.rows[r], count_pos);
    } else {
      ++n_neg;
      nb_detail::count_present(data.rows[r], count_neg);
    }
  }

  BernoulliNbModel model;
  model.dimension = dim;
  double n = static_cast<double>(data.size());
  model.log_prior_pos = std::log(static_cast<double>(n_pos) / n);
  model.log_prior_neg = std::log(static_cast<double>(n_neg) / n);
  model.p_pos.resize(dim);
  model.p_neg.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    model.p_pos[i] = (static_cast<double>(count_pos[i]) + config.alpha) /
                     (static_cast<double>(n_pos) + 2.0 * config.alpha);
    model.p_neg[i] = (static_cast<double>(count_neg[i]) + config.alpha) /
                     (static_cast<double>(n_neg) + 2.0 * config.alpha);
    model.base_pos += std::log1p(-model.p_pos[i]);
    model.base_neg += std::log1p(-model.p_neg[i]);
  }
  return model;
}

namespace nb_detail {

template <typename Fn>
void for_each_present(const SparseVector& x, Fn&& fn) {
  for (const auto& [i, v] : x.entries)
    if (v != 0.0) fn(i);
}

template <typename Fn>
void for_each_present(const DenseVector& x, Fn&& fn) {
  for (std::size_t i = 0; i < x.values.size(); ++i)
    if (x.values[i] != 0.0) fn(static_cast<std::uint32_t>(i));
}

}  // namespace nb_detail

// log P(C_k) + log P(x | C_k) for (Positive, Negative).
template <typename V>
std::pair<double, double> bernoulli_nb_log_joint(const BernoulliNbModel& model,
                                                 const V& x) {
  if (x.dimension() != model.dimension)
    throw ArgumentError("predict_bernoulli_nb: dimension mismatch (got " +
                        std::to_string(x.dimension()) + ", model has " +
                        std::to_string(model.dimension) + ")");
  double pos = model.log_prior_pos + model.base_pos;
  double neg = model.log_prior_neg + model.base_neg;
  nb_detail::for_each_present(x, [&](std::uint32_t i) {
    pos += std::log(model.p_pos[i]) - std::log1p(-model.p_pos[i]);
    neg += std::log(model.p_neg[i]) - std::log1p(-model.p_neg[i]);
  });
  return {pos, neg};
}

// Log-space argmax of prior * likelihood; ties go Positive.
template <typename V>
Polarity predict_bernoulli_nb(const BernoulliNbModel& model, const V& x) {
  auto [pos, neg] = bernoulli_nb_log_joint(model, x);
  return pos >= neg ? Polarity::Positive : Polarity::Negative;
}

}  // namespace sentivec
