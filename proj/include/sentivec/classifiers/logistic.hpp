#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "sentivec/classifiers/common.hpp"

namespace sentivec {

struct LogisticConfig {
  double reg_lambda = 1e-4;   // L2 penalty on the weights (bias unpenalized)
  double learning_rate = 0.1;
  std::size_t iterations = 500;

  bool operator==(const LogisticConfig&) const = default;
};

// theta holds the feature weights followed by the bias term.
struct LogisticModel {
  DenseVector theta;
  double final_loss = 0.0;
  double final_grad_norm = 0.0;

  std::size_t feature_dimension() const { return theta.dimension() - 1; }
  double bias() const { return theta.values.back(); }
};

namespace logit_detail {

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// -[y ln p + (1-y) ln(1-p)] = softplus(z) - y z, computed stably.
inline double nll(double z, double y) {
  double softplus = z >= 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
  return softplus - y * z;
}

inline double margin(const DenseVector& theta, const SparseVector& x) {
  double z = theta.values.back();
  for (const auto& [i, v] : x.entries) z += theta.values[i] * v;
  return z;
}

inline double margin(const DenseVector& theta, const DenseVector& x) {
  double z = theta.values.back();
  for (std::size_t i = 0; i < x.values.size(); ++i) z += theta.values[i] * x.values[i];
  return z;
}

inline void axpy(DenseVector& acc, double a, const SparseVector& x) {
  for (const auto& [i, v] : x.entries) acc.values[i] += a * v;
}

inline void axpy(DenseVector& acc, double a, const DenseVector& x) {
  for (std::size_t i = 0; i < x.values.size(); ++i) acc.values[i] += a * x.values[i];
}

}  // namespace logit_detail

// Full-batch gradient descent on the L2-regularized mean negative
// log-likelihood of P(y=1|x) = sigmoid(theta^T x).
template <typename V>
LogisticModel train_logistic(const FeatureMatrix<V>& data,
                             const LogisticConfig& config) {
  data.validate_for_training();
  if (!data.has_both_classes())
    throw ArgumentError("train_logistic: need at least one example per class");

  const std::size_t dim = data.dimension();
  const std::size_t n = data.size();
  const double inv_n = 1.0 / static_cast<double>(n);

  LogisticModel model;
  model.theta = DenseVector(dim + 1);
  DenseVector grad(dim + 1);

  for (std::size_t iter = 0; iter < config.iterations; ++iter) {
    grad.values.assign(dim + 1, 0.0);
    double loss = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      double y = static_cast<double>(label_value(data.labels[r]));
      double z = logit_detail::margin(model.theta, data.rows[r]);
      loss += logit_detail::nll(z, y);
      double d = (logit_detail::sigmoid(z) - y) * inv_n;
      logit_detail::axpy(grad, d, data.rows[r]);
      grad.values[dim] += d;
    }
    loss *= inv_n;
    for (std::size_t i = 0; i < dim; ++i) {
      grad.values[i] += config.reg_lambda * model.theta.values[i];
      loss += 0.5 * config.reg_lambda * model.theta.values[i] * model.theta.values[i];
    }
    if (!std::isfinite(loss))
      throw ComputeError("train_logistic diverged at iteration " +
                         std::to_string(iter + 1) + " (non-finite loss)");
    for (std::size_t i = 0; i <= dim; ++i)
      model.theta.values[i] -= config.learning_rate * grad.values[i];
    model.final_loss = loss;
    model.final_grad_norm = std::sqrt(grad.squared_norm());
  }
  return model;
}

template <typename V>
double logistic_probability_positive(const LogisticModel& model, const V& x) {
  if (x.dimension() != model.feature_dimension())
    throw ArgumentError("predict_logistic: dimension mismatch (got " +
                        std::to_string(x.dimension()) + ", model has " +
                        std::to_string(model.feature_dimension()) + ")");
  return logit_detail::sigmoid(logit_detail::margin(model.theta, x));
}

// Positive iff P(y=1|x) >= 0.5; ties go Positive.
template <typename V>
std::pair<Polarity, double> predict_logistic(const LogisticModel& model, const V& x) {
  double p = logistic_probability_positive(model, x);
  return {p >= 0.5 ? Polarity::Positive : Polarity::Negative, p};
}

}  // namespace sentivec
