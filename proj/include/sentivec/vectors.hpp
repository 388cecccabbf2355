#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sentivec/errors.hpp"

namespace sentivec {

// Sparse document vector: entries sorted by strictly increasing index,
// zero-valued entries are never stored.
struct SparseVector {
  std::uint32_t dim = 0;
  std::vector<std::pair<std::uint32_t, double>> entries;

  std::size_t dimension() const { return dim; }

  double value_at(std::uint32_t index) const {
    auto it = std::lower_bound(
        entries.begin(), entries.end(), index,
        [](const auto& e, std::uint32_t i) { return e.first < i; });
    return (it != entries.end() && it->first == index) ? it->second : 0.0;
  }

  double squared_norm() const {
    double s = 0.0;
    for (const auto& [i, v] : entries) s += v * v;
    return s;
  }

  bool operator==(const SparseVector&) const = default;
};

struct DenseVector {
  std::vector<double> values;

  DenseVector() = default;
  explicit DenseVector(std::size_t n, double fill = 0.0) : values(n, fill) {}
  explicit DenseVector(std::vector<double> v) : values(std::move(v)) {}

  std::size_t dimension() const { return values.size(); }
  double value_at(std::uint32_t index) const { return values[index]; }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }

  double squared_norm() const {
    double s = 0.0;
    for (double v : values) s += v * v;
    return s;
  }

  bool operator==(const DenseVector&) const = default;
};

inline double dot(const DenseVector& a, const DenseVector& b) {
  if (a.dimension() != b.dimension())
    throw ArgumentError("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * b.values[i];
  return s;
}

inline double dot(const SparseVector& a, const SparseVector& b) {
  if (a.dim != b.dim) throw ArgumentError("dot: dimension mismatch");
  double s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.entries.size() && j < b.entries.size()) {
    if (a.entries[i].first < b.entries[j].first) {
      ++i;
    } else if (a.entries[i].first > b.entries[j].first) {
      ++j;
    } else {
      s += a.entries[i].second * b.entries[j].second;
      ++i;
      ++j;
    }
  }
  return s;
}

// Merge walk over the union of indices, summing terms in index order. This
// matches a dense loop bit for bit because absent indices contribute an
// exact +0.0.
inline double squared_distance(const SparseVector& a, const SparseVector& b) {
  if (a.dim != b.dim) throw ArgumentError("squared_distance: dimension mismatch");
  double s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.entries.size() || j < b.entries.size()) {
    double av = 0.0, bv = 0.0;
    std::uint32_t ai = i < a.entries.size() ? a.entries[i].first : a.dim;
    std::uint32_t bi = j < b.entries.size() ? b.entries[j].first : b.dim;
    if (ai <= bi) av = a.entries[i++].second;
    if (bi <= ai) bv = b.entries[j++].second;
    double d = av - bv;
    s += d * d;
  }
  return s;
}

inline double squared_distance(const DenseVector& a, const DenseVector& b) {
  if (a.dimension() != b.dimension())
    throw ArgumentError("squared_distance: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    double d = a.values[i] - b.values[i];
    s += d * d;
  }
  return s;
}

inline void l2_normalize(SparseVector& v) {
  double n = std::sqrt(v.squared_norm());
  if (n > 0.0)
    for (auto& e : v.entries) e.second /= n;
}

inline double cosine_similarity(const DenseVector& a, const DenseVector& b) {
  double na = std::sqrt(a.squared_norm());
  double nb = std::sqrt(b.squared_norm());
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

// Row-major dense matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const double> row(std::size_t i) const {
    return {data.data() + i * cols, cols};
  }

  DenseVector row_vector(std::size_t i) const {
    auto r = row(i);
    return DenseVector(std::vector<double>(r.begin(), r.end()));
  }

  bool all_finite() const {
    for (double v : data)
      if (!std::isfinite(v)) return false;
    return true;
  }

  bool operator==(const Matrix&) const = default;
};

// FNV-1a over raw bytes; used for content fingerprints.
inline std::uint64_t fnv1a(const void* bytes, std::size_t n,
                           std::uint64_t h = 0xcbf29ce484222325ULL) {
  const unsigned char* p = static_cast<const unsigned char*>(bytes);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace sentivec
