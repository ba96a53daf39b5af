#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "clcn/errors.hpp"

namespace clcn {

inline std::size_t shape_numel(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

inline std::string shape_str(const std::vector<std::size_t>& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

/// Dense row-major n-d array of scalars. When an op records it on a graph,
/// `node` holds the tape handle; -1 means not recorded.
template <typename T>
struct TensorT {
  std::vector<std::size_t> shape;
  std::vector<T> values;
  int node = -1;

  TensorT() = default;

  TensorT(std::vector<std::size_t> shape_in, std::vector<T> values_in)
      : shape(std::move(shape_in)), values(std::move(values_in)) {
    if (shape_numel(shape) != values.size())
      throw DimError("tensor shape " + shape_str(shape) + " does not match " +
                     std::to_string(values.size()) + " values");
    for (std::size_t d : shape)
      if (d == 0) throw DimError("tensor extents must be positive");
  }

  static TensorT zeros(std::vector<std::size_t> shape_in) {
    std::size_t n = shape_numel(shape_in);
    return TensorT(std::move(shape_in), std::vector<T>(n, T(0)));
  }

  static TensorT full(std::vector<std::size_t> shape_in, T v) {
    std::size_t n = shape_numel(shape_in);
    return TensorT(std::move(shape_in), std::vector<T>(n, v));
  }

  static TensorT scalar(T v) { return TensorT({1}, {v}); }

  std::size_t numel() const { return values.size(); }

  bool is_scalar() const { return values.size() == 1; }

  /// Row/column accessors for the 2-d case.
  std::size_t rows() const {
    require_2d();
    return shape[0];
  }
  std::size_t cols() const {
    require_2d();
    return shape[1];
  }
  T& at(std::size_t r, std::size_t c) { return values[r * cols() + c]; }
  T at(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }

  T item() const {
    if (!is_scalar()) throw ContractError("item() requires a scalar tensor");
    return values[0];
  }

  /// Validity check: true iff every entry is finite.
  bool finite() const {
    for (T v : values)
      if (!std::isfinite(static_cast<double>(v))) return false;
    return true;
  }

 private:
  void require_2d() const {
    if (shape.size() != 2)
      throw DimError("expected a 2-d tensor, got " + shape_str(shape));
  }
};

using Tensor = TensorT<float>;
using Tensor64 = TensorT<double>;

/// Precision cast, used to re-evaluate float graphs in a 64-bit shadow mode.
template <typename To, typename From>
TensorT<To> cast(const TensorT<From>& t) {
  std::vector<To> out(t.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<To>(t.values[i]);
  TensorT<To> r(t.shape, std::move(out));
  return r;
}

/// One-hot rows for integer class labels.
template <typename T>
TensorT<T> onehot(const std::vector<int>& labels, int num_classes) {
  if (num_classes < 2) throw ContractError("onehot requires at least 2 classes");
  TensorT<T> out = TensorT<T>::zeros({labels.size(), static_cast<std::size_t>(num_classes)});
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= num_classes)
      throw ContractError("label " + std::to_string(labels[i]) + " out of range [0," +
                          std::to_string(num_classes) + ")");
    out.values[i * num_classes + labels[i]] = T(1);
  }
  return out;
}

}  // namespace clcn
