#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "sentivec/classifiers/common.hpp"
#include "sentivec/classifiers/logistic.hpp"

namespace sentivec {

struct LinearKernel {
  bool operator==(const LinearKernel&) const = default;
};

struct RbfKernel {
  double gamma = 0.0;  // 0 means "auto": 1 / feature dimension

  bool operator==(const RbfKernel&) const = default;
};

using SvmKernel = std::variant<LinearKernel, RbfKernel>;

struct SvmConfig {
  SvmKernel kernel = LinearKernel{};
  double C = 1.0;
  double tol = 1e-3;
  std::size_t max_passes = 1000;  // bound on outer SMO sweeps

  bool operator==(const SvmConfig&) const = default;
};

// Soft-margin SVM. Linear models collapse to an explicit weight vector;
// RBF models keep the support vectors and their coefficients alpha_i * y_i.
template <typename V>
struct SvmModel {
  SvmKernel kernel;
  double C = 1.0;
  double bias = 0.0;
  bool converged = true;

  DenseVector weights;  // linear kernel only

  std::vector<V> support_vectors;      // rbf kernel only
  std::vector<double> support_coeffs;  // alpha_i * y_i

  // Full dual state, kept for diagnostics and invariant checks.
  std::vector<double> alpha;
  std::vector<double> y;  // +1 / -1

  std::size_t dimension = 0;
};

namespace svm_detail {

template <typename V>
struct KernelFn {
  bool rbf = false;
  double gamma = 0.0;
  std::vector<double> norms;  // cached squared norms for the rbf case

  double operator()(const V& a, double norm_a, const V& b, double norm_b) const {
    double d = dot(a, b);
    if (!rbf) return d;
    return std::exp(-gamma * (norm_a + norm_b - 2.0 * d));
  }
};

}  // namespace svm_detail

// Sequential minimal optimization over the soft-margin dual. Terminates when
// a full sweep finds no KKT violation beyond tol; if max_passes sweeps were
// not enough the best-so-far model is returned with converged = false.
template <typename V>
SvmModel<V> train_svm(const FeatureMatrix<V>& data, const SvmConfig& config) {
  data.validate_for_training();
  if (!data.has_both_classes())
    throw ArgumentError("train_svm: need at least one example per class");
  if (config.C <= 0.0) throw ArgumentError("train_svm: C must be > 0");

  const std::size_t n = data.size();
  const std::size_t dim = data.dimension();
  const double C = config.C;
  const double tol = config.tol;
  constexpr double kEps = 1e-12;

  svm_detail::KernelFn<V> kernel;
  if (const auto* rbf = std::get_if<RbfKernel>(&config.kernel)) {
    kernel.rbf = true;
    kernel.gamma = rbf->gamma > 0.0
                       ? rbf->gamma
                       : 1.0 / static_cast<double>(dim > 0 ? dim : 1);
  }
  kernel.norms.resize(n);
  for (std::size_t i = 0; i < n; ++i) kernel.norms[i] = data.rows[i].squared_norm();

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i)
    y[i] = data.labels[i] == Polarity::Positive ? 1.0 : -1.0;

  std::vector<double> alpha(n, 0.0);
  double b = 0.0;

  auto k_of = [&](std::size_t i, std::size_t j) {
    return kernel(data.rows[i], kernel.norms[i], data.rows[j], kernel.norms[j]);
  };

  // Error cache E_i = f(x_i) - y_i, updated incrementally after every step.
  std::vector<double> errors(n);
  for (std::size_t i = 0; i < n; ++i) errors[i] = -y[i];  // f = 0 initially

  auto take_step = [&](std::size_t i1, std::size_t i2) -> bool {
    if (i1 == i2) return false;
    double a1 = alpha[i1], a2 = alpha[i2];
    double y1 = y[i1], y2 = y[i2];
    double e1 = errors[i1], e2 = errors[i2];
    double s = y1 * y2;

    double lo, hi;
    if (s < 0.0) {
      lo = std::max(0.0, a2 - a1);
      hi = std::min(C, C + a2 - a1);
    } else {
      lo = std::max(0.0, a2 + a1 - C);
      hi = std::min(C, a2 + a1);
    }
    if (lo >= hi) return false;

    double k11 = k_of(i1, i1), k12 = k_of(i1, i2), k22 = k_of(i2, i2);
    double eta = k11 + k22 - 2.0 * k12;

    double a2_new;
    if (eta > kEps) {
      a2_new = a2 + y2 * (e1 - e2) / eta;
      a2_new = std::min(hi, std::max(lo, a2_new));
    } else {
      // For a PSD kernel eta >= 0, so eta ~ 0 means the pair objective is
      // linear along the constraint line with slope y2 (E1 - E2).
      double slope = y2 * (e1 - e2);
      if (slope > kEps)
        a2_new = hi;
      else if (slope < -kEps)
        a2_new = lo;
      else
        return false;
    }
    if (std::abs(a2_new - a2) < kEps * (a2_new + a2 + kEps)) return false;

    double a1_new = a1 + s * (a2 - a2_new);

    double b1 = b - e1 - y1 * (a1_new - a1) * k11 - y2 * (a2_new - a2) * k12;
    double b2 = b - e2 - y1 * (a1_new - a1) * k12 - y2 * (a2_new - a2) * k22;
    double b_new;
    if (a1_new > kEps && a1_new < C - kEps)
      b_new = b1;
    else if (a2_new > kEps && a2_new < C - kEps)
      b_new = b2;
    else
      b_new = 0.5 * (b1 + b2);

    double d1 = y1 * (a1_new - a1), d2 = y2 * (a2_new - a2);
    for (std::size_t j = 0; j < n; ++j)
      errors[j] += d1 * k_of(i1, j) + d2 * k_of(i2, j) + (b_new - b);

    alpha[i1] = a1_new;
    alpha[i2] = a2_new;
    b = b_new;
    return true;
  };

  auto violates_kkt = [&](std::size_t i) {
    double r = errors[i] * y[i];
    return (r < -tol && alpha[i] < C) || (r > tol && alpha[i] > 0.0);
  };

  auto examine = [&](std::size_t i2) -> bool {
    if (!violates_kkt(i2)) return false;

    // Second choice: non-bound point maximizing |E1 - E2|.
    std::size_t best = n;
    double best_gap = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i2 || alpha[j] <= 0.0 || alpha[j] >= C) continue;
      double gap = std::abs(errors[j] - errors[i2]);
      if (gap > best_gap) {
        best_gap = gap;
        best = j;
      }
    }
    if (best < n && take_step(best, i2)) return true;

    // Fall back to scanning non-bound points, then all points, from a
    // position-derived start so runs stay deterministic.
    for (std::size_t off = 0; off < n; ++off) {
      std::size_t j = (i2 + 1 + off) % n;
      if (j == i2 || alpha[j] <= 0.0 || alpha[j] >= C) continue;
      if (take_step(j, i2)) return true;
    }
    for (std::size_t off = 0; off < n; ++off) {
      std::size_t j = (i2 + 1 + off) % n;
      if (j == i2) continue;
      if (take_step(j, i2)) return true;
    }
    return false;
  };

  bool examine_all = true;
  std::size_t changed = 0;
  std::size_t passes = 0;
  bool converged = false;
  while (true) {
    if (passes >= config.max_passes) break;
    ++passes;
    changed = 0;
    if (examine_all) {
      for (std::size_t i = 0; i < n; ++i)
        if (examine(i)) ++changed;
      if (changed == 0) {
        converged = true;  // no KKT violator anywhere
        break;
      }
      examine_all = false;
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        if (alpha[i] <= 0.0 || alpha[i] >= C) continue;
        if (examine(i)) ++changed;
      }
      if (changed == 0) examine_all = true;
    }
  }

  SvmModel<V> model;
  model.kernel = config.kernel;
  if (auto* rbf = std::get_if<RbfKernel>(&model.kernel); rbf && rbf->gamma <= 0.0)
    rbf->gamma = kernel.gamma;
  model.C = C;
  model.bias = b;
  model.converged = converged;
  model.alpha = alpha;
  model.y = y;
  model.dimension = dim;

  if (!kernel.rbf) {
    model.weights = DenseVector(dim);
    for (std::size_t i = 0; i < n; ++i) {
      if (alpha[i] == 0.0) continue;
      logit_detail::axpy(model.weights, alpha[i] * y[i], data.rows[i]);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (alpha[i] == 0.0) continue;
      model.support_vectors.push_back(data.rows[i]);
      model.support_coeffs.push_back(alpha[i] * y[i]);
    }
  }
  return model;
}

template <typename V>
double svm_decision_value(const SvmModel<V>& model, const V& x) {
  if (x.dimension() != model.dimension)
    throw ArgumentError("predict_svm: dimension mismatch (got " +
                        std::to_string(x.dimension()) + ", model has " +
                        std::to_string(model.dimension) + ")");
  if (std::holds_alternative<LinearKernel>(model.kernel)) {
    double z = model.bias;
    if constexpr (std::is_same_v<V, SparseVector>) {
      for (const auto& [i, v] : x.entries) z += model.weights.values[i] * v;
    } else {
      for (std::size_t i = 0; i < x.values.size(); ++i)
        z += model.weights.values[i] * x.values[i];
    }
    return z;
  }
  double gamma = std::get<RbfKernel>(model.kernel).gamma;
  double norm_x = x.squared_norm();
  double z = model.bias;
  for (std::size_t i = 0; i < model.support_vectors.size(); ++i) {
    const V& sv = model.support_vectors[i];
    double d2 = sv.squared_norm() + norm_x - 2.0 * dot(sv, x);
    z += model.support_coeffs[i] * std::exp(-gamma * d2);
  }
  return z;
}

// Sign of the decision function; zero goes Positive.
template <typename V>
Polarity predict_svm(const SvmModel<V>& model, const V& x) {
  return svm_decision_value(model, x) >= 0.0 ? Polarity::Positive
                                             : Polarity::Negative;
}

}  // namespace sentivec
