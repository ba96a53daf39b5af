#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "clcn/graph.hpp"
#include "clcn/tensor.hpp"

namespace clcn {

/// Shape of the classifier h = g∘f: a dense feature extractor f whose output
/// is l2-normalized and rescaled to `rescale`, followed by a linear softmax
/// head g operating on the normalized embedding.
struct Architecture {
  int input_dim = 2;
  std::vector<int> hidden;
  int embed_dim = 16;
  int num_classes = 2;
  float rescale = 5.0f;

  void validate() const;

  /// Layer widths of f: input_dim, hidden..., embed_dim.
  std::vector<int> layer_dims() const {
    std::vector<int> dims{input_dim};
    dims.insert(dims.end(), hidden.begin(), hidden.end());
    dims.push_back(embed_dim);
    return dims;
  }

  bool operator==(const Architecture&) const = default;
};

template <typename T>
struct ModelParamsT {
  Architecture arch;
  std::vector<TensorT<T>> weights;  // one [d_in x d_out] per layer of f
  std::vector<TensorT<T>> biases;   // matching [d_out]
  TensorT<T> head_weight;           // [embed_dim x num_classes]
  TensorT<T> head_bias;             // [num_classes]
  std::uint64_t seed = 0;

  /// Visits every parameter tensor in declaration order (the checkpoint and
  /// optimizer-state order).
  template <typename Fn>
  void for_each(Fn&& fn) {
    for (std::size_t i = 0; i < weights.size(); ++i) {
      fn(weights[i]);
      fn(biases[i]);
    }
    fn(head_weight);
    fn(head_bias);
  }
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < weights.size(); ++i) {
      fn(weights[i]);
      fn(biases[i]);
    }
    fn(head_weight);
    fn(head_bias);
  }

  std::size_t tensor_count() const { return 2 * weights.size() + 2; }
  std::size_t value_count() const {
    std::size_t n = 0;
    for_each([&](const TensorT<T>& t) { n += t.numel(); });
    return n;
  }
};

using ModelParams = ModelParamsT<float>;

/// He-normal weights (std sqrt(2/fan_in)), zero biases; deterministic in seed.
ModelParams init_params(const Architecture& arch, std::uint64_t seed);

/// Records every parameter tensor as a leaf on the graph.
template <typename T>
ModelParamsT<T> record_params(GraphT<T>& g, const ModelParamsT<T>& p) {
  ModelParamsT<T> out = p;
  out.for_each([&](TensorT<T>& t) { t = g.var(t); });
  return out;
}

/// f: affine+relu hidden stack, affine to embed_dim, then l2 rescale. Every
/// output row has norm arch.rescale.
template <typename T>
TensorT<T> embed(GraphT<T>& g, const ModelParamsT<T>& p, const TensorT<T>& batch) {
  if (batch.cols() != static_cast<std::size_t>(p.arch.input_dim))
    throw DimError("embed: batch width " + std::to_string(batch.cols()) +
                   " does not match input_dim " + std::to_string(p.arch.input_dim));
  TensorT<T> x = batch.node >= 0 ? batch : g.var(batch);
  for (std::size_t i = 0; i < p.weights.size(); ++i) {
    x = g.affine(x, p.weights[i], p.biases[i]);
    if (i + 1 < p.weights.size()) x = g.relu(x);
  }
  return g.l2norm_rescale(x, static_cast<T>(p.arch.rescale));
}

/// Head logits over the embedding.
template <typename T>
TensorT<T> head_logits(GraphT<T>& g, const ModelParamsT<T>& p, const TensorT<T>& features) {
  const TensorT<T>& f = features;
  return g.affine(f.node >= 0 ? f : g.var(f), p.head_weight, p.head_bias);
}

/// g∘(features): per-row class distribution p(y|x).
template <typename T>
TensorT<T> classify(GraphT<T>& g, const ModelParamsT<T>& p, const TensorT<T>& features) {
  return g.softmax_rows(head_logits(g, p, features));
}

/// Forward-only conveniences on a throwaway graph.
Tensor embed_eval(const ModelParams& p, const Tensor& batch);
Tensor classify_eval(const ModelParams& p, const Tensor& batch);
std::vector<int> predict(const ModelParams& p, const Tensor& batch);

/// 64-bit shadow copy for the finite-difference oracle.
ModelParamsT<double> to_shadow(const ModelParams& p);

/// Packing helpers used by the oracle suite: all parameters as one flat
/// vector, and the inverse that rebuilds a parameter set from slices of a
/// recorded flat leaf (so a single grad_check covers every parameter).
template <typename T>
TensorT<T> flatten_params(const ModelParamsT<T>& p) {
  std::vector<T> flat;
  flat.reserve(p.value_count());
  p.for_each([&](const TensorT<T>& t) { flat.insert(flat.end(), t.values.begin(), t.values.end()); });
  return TensorT<T>({flat.size()}, std::move(flat));
}

template <typename T>
ModelParamsT<T> unflatten_params(GraphT<T>& g, const TensorT<T>& flat, const ModelParamsT<T>& like) {
  if (flat.numel() != like.value_count())
    throw DimError("unflatten_params: flat size does not match parameter count");
  ModelParamsT<T> out = like;
  std::size_t off = 0;
  out.for_each([&](TensorT<T>& t) {
    t = g.slice(flat, off, t.shape);
    off += t.numel();
  });
  return out;
}

/// Parameter checkpoint: magic "CLCN", format version, architecture header,
/// then raw little-endian f32 tensors in declaration order.
void save_params(const std::filesystem::path& path, const ModelParams& p);
ModelParams load_params(const std::filesystem::path& path);

}  // namespace clcn
