#pragma once

#include <cstddef>
#include <vector>

#include "sentivec/corpus.hpp"
#include "sentivec/errors.hpp"
#include "sentivec/vectors.hpp"

namespace sentivec {

// Training design matrix: uniform-dimension vectors plus aligned labels.
// V is SparseVector or DenseVector.
template <typename V>
struct FeatureMatrix {
  std::vector<V> rows;
  std::vector<Polarity> labels;

  std::size_t size() const { return rows.size(); }

  std::size_t dimension() const { return rows.empty() ? 0 : rows[0].dimension(); }

  void validate_for_training() const {
    if (rows.empty()) throw ArgumentError("FeatureMatrix: no training rows");
    if (labels.size() != rows.size())
      throw ArgumentError("FeatureMatrix: labels/rows length mismatch");
    std::size_t dim = rows[0].dimension();
    for (const auto& r : rows)
      if (r.dimension() != dim)
        throw ArgumentError("FeatureMatrix: inconsistent row dimensions");
  }

  bool has_both_classes() const {
    bool pos = false, neg = false;
    for (Polarity p : labels) (p == Polarity::Positive ? pos : neg) = true;
    return pos && neg;
  }
};

}  // namespace sentivec
