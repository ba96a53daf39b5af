#pragma once

#include <vector>

#include "clcn/centroids.hpp"
#include "clcn/errors.hpp"
#include "clcn/tensor.hpp"

namespace clcn {

/// Fraction of predictions equal to labels.
double accuracy(const std::vector<int>& predictions, const std::vector<int>& labels);

/// Sum over classes of the squared Euclidean distance between matched
/// source and target centroids. Both banks must be fully initialized.
template <typename T>
T centroid_distance(const CentroidBankT<T>& a, const CentroidBankT<T>& b) {
  if (!a.fully_initialized() || !b.fully_initialized())
    throw ContractError("centroid_distance: bank has uninitialized classes");
  if (a.centroids.shape != b.centroids.shape)
    throw DimError("centroid_distance: banks disagree on K or M");
  T total = T(0);
  for (std::size_t i = 0; i < a.centroids.numel(); ++i) {
    const T d = a.centroids.values[i] - b.centroids.values[i];
    total += d * d;
  }
  return total;
}

/// Mean-centered projection onto the top two principal directions, found by
/// power iteration with deflation (tolerance 1e-6, at most 1000 iterations,
/// fixed deterministic start vectors).
Tensor pca_project(const Tensor& features);

}  // namespace clcn
