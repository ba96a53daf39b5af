#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "clcn/errors.hpp"
#include "clcn/tensor.hpp"

namespace clcn {

enum class Op : std::uint8_t {
  kLeaf,
  kAffine,
  kRelu,
  kL2NormRescale,
  kSoftmaxXent,
  kSoftmaxRows,
  kNllOnehot,
  kGroupMean,
  kEmaBlend,
  kCosineSim,
  kSlice,
  kAdd,
  kMul,
  kScale,
  kSum,
};

/// Append-only tape of primitive applications. Each op records its inputs by
/// node id, so inputs always precede consumers and a single reverse sweep
/// visits the graph in valid topological order. One graph is built and
/// differentiated by one thread; tensors moving between threads are values.
template <typename T>
class GraphT {
  using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using MapMat = Eigen::Map<Mat>;
  using CMapMat = Eigen::Map<const Mat>;

 public:
  /// Records a tensor as a differentiable leaf and returns its graph handle.
  TensorT<T> var(const TensorT<T>& t) {
    Node n;
    n.op = Op::kLeaf;
    n.shape = t.shape;
    n.value = t.values;
    return make(std::move(n));
  }

  /// out[i,j] = sum_d x[i,d] * w[d,j] + b[j]
  TensorT<T> affine(const TensorT<T>& x, const TensorT<T>& w, const TensorT<T>& b) {
    const std::size_t N = x.rows(), D = x.cols(), M = w.cols();
    if (w.rows() != D)
      throw DimError("affine: x " + shape_str(x.shape) + " vs w " + shape_str(w.shape));
    if (b.shape.size() != 1 || b.shape[0] != M)
      throw DimError("affine: bias " + shape_str(b.shape) + " vs w " + shape_str(w.shape));
    Node n;
    n.op = Op::kAffine;
    n.inputs = {id_of(x), id_of(w), id_of(b)};
    n.shape = {N, M};
    n.value.resize(N * M);
    MapMat out(n.value.data(), N, M);
    out.noalias() = CMapMat(x.values.data(), N, D) * CMapMat(w.values.data(), D, M);
    out.rowwise() += Eigen::Map<const Eigen::Matrix<T, 1, Eigen::Dynamic>>(b.values.data(), M);
    return make(std::move(n));
  }

  /// Elementwise max(0, x). The gradient at exactly 0 is 0.
  TensorT<T> relu(const TensorT<T>& x) {
    Node n;
    n.op = Op::kRelu;
    n.inputs = {id_of(x)};
    n.shape = x.shape;
    n.value.resize(x.numel());
    for (std::size_t i = 0; i < x.numel(); ++i) n.value[i] = x.values[i] > T(0) ? x.values[i] : T(0);
    return make(std::move(n));
  }

  /// Rescales every row to l2 norm s. Rows with norm <= 1e-12 are degenerate.
  TensorT<T> l2norm_rescale(const TensorT<T>& x, T s) {
    const std::size_t N = x.rows(), D = x.cols();
    if (s <= T(0)) throw ContractError("l2norm_rescale: scale must be positive");
    Node n;
    n.op = Op::kL2NormRescale;
    n.inputs = {id_of(x)};
    n.shape = x.shape;
    n.scalar = s;
    n.value.resize(N * D);
    n.aux.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
      T ss = T(0);
      for (std::size_t d = 0; d < D; ++d) ss += x.values[i * D + d] * x.values[i * D + d];
      const T norm = std::sqrt(ss);
      if (!(norm > T(1e-12)))
        throw NumericError("l2norm_rescale: degenerate row " + std::to_string(i) +
                           " with norm " + std::to_string(static_cast<double>(norm)));
      n.aux[i] = norm;
      const T f = s / norm;
      for (std::size_t d = 0; d < D; ++d) n.value[i * D + d] = f * x.values[i * D + d];
    }
    return make(std::move(n));
  }

  /// Mean over rows of -sum_k t[k] log softmax(logits)[k], computed in the
  /// max-shifted log-sum-exp form. Targets are per-row distributions and are
  /// not differentiated.
  TensorT<T> softmax_cross_entropy(const TensorT<T>& logits, const TensorT<T>& targets) {
    const std::size_t N = logits.rows(), K = logits.cols();
    if (K < 2) throw ContractError("softmax_cross_entropy: needs at least 2 classes");
    if (targets.shape != logits.shape)
      throw DimError("softmax_cross_entropy: targets " + shape_str(targets.shape) +
                     " vs logits " + shape_str(logits.shape));
    Node n;
    n.op = Op::kSoftmaxXent;
    n.inputs = {id_of(logits)};
    n.shape = {1};
    n.aux.resize(2 * N * K);  // [softmax probs | targets]
    T total = T(0);
    for (std::size_t i = 0; i < N; ++i) {
      const T* z = logits.values.data() + i * K;
      const T* t = targets.values.data() + i * K;
      T tsum = T(0);
      for (std::size_t k = 0; k < K; ++k) tsum += t[k];
      if (std::abs(static_cast<double>(tsum) - 1.0) > 1e-6)
        throw ContractError("softmax_cross_entropy: target row " + std::to_string(i) +
                            " sums to " + std::to_string(static_cast<double>(tsum)));
      const T m = *std::max_element(z, z + K);
      T sum = T(0);
      for (std::size_t k = 0; k < K; ++k) sum += std::exp(z[k] - m);
      const T lse = m + std::log(sum);
      T dot = T(0);
      for (std::size_t k = 0; k < K; ++k) {
        n.aux[i * K + k] = std::exp(z[k] - lse);
        n.aux[N * K + i * K + k] = t[k];
        dot += t[k] * z[k];
      }
      total += lse - dot;
    }
    n.value = {total / static_cast<T>(N)};
    return make(std::move(n));
  }

  /// Row-wise softmax.
  TensorT<T> softmax_rows(const TensorT<T>& logits) {
    const std::size_t N = logits.rows(), K = logits.cols();
    Node n;
    n.op = Op::kSoftmaxRows;
    n.inputs = {id_of(logits)};
    n.shape = logits.shape;
    n.value.resize(N * K);
    for (std::size_t i = 0; i < N; ++i) {
      const T* z = logits.values.data() + i * K;
      const T m = *std::max_element(z, z + K);
      T sum = T(0);
      for (std::size_t k = 0; k < K; ++k) sum += std::exp(z[k] - m);
      for (std::size_t k = 0; k < K; ++k) n.value[i * K + k] = std::exp(z[k] - m) / sum;
    }
    return make(std::move(n));
  }

  /// -(1/N) sum_i log probs[i, labels[i]]. Entries below 1e-12 are clamped
  /// before the log and counted in clamp_events().
  TensorT<T> nll_onehot(const TensorT<T>& probs, const std::vector<int>& labels) {
    const std::size_t N = probs.rows(), K = probs.cols();
    if (labels.size() != N)
      throw DimError("nll_onehot: " + std::to_string(labels.size()) + " labels for " +
                     std::to_string(N) + " rows");
    Node n;
    n.op = Op::kNllOnehot;
    n.inputs = {id_of(probs)};
    n.shape = {1};
    n.iaux.assign(labels.begin(), labels.end());
    T total = T(0);
    for (std::size_t i = 0; i < N; ++i) {
      if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= K)
        throw ContractError("nll_onehot: label out of range at row " + std::to_string(i));
      T row_sum = T(0);
      for (std::size_t k = 0; k < K; ++k) row_sum += probs.values[i * K + k];
      if (std::abs(static_cast<double>(row_sum) - 1.0) > 1e-3)
        throw ContractError("nll_onehot: row " + std::to_string(i) + " is not a distribution");
      T p = probs.values[i * K + labels[i]];
      if (p < kClampEps) {
        p = kClampEps;
        ++clamp_events_;
      }
      total -= std::log(p);
    }
    n.value = {total / static_cast<T>(N)};
    return make(std::move(n));
  }

  /// Per-class mean of rows: out[k] = mean of x rows with label k. Classes
  /// absent from the batch get a zero row and a false entry in the mask.
  std::pair<TensorT<T>, std::vector<std::uint8_t>> group_mean(const TensorT<T>& x,
                                                              const std::vector<int>& labels,
                                                              int num_classes) {
    const std::size_t N = x.rows(), M = x.cols();
    const std::size_t K = static_cast<std::size_t>(num_classes);
    if (labels.size() != N)
      throw DimError("group_mean: " + std::to_string(labels.size()) + " labels for " +
                     std::to_string(N) + " rows");
    Node n;
    n.op = Op::kGroupMean;
    n.inputs = {id_of(x)};
    n.shape = {K, M};
    n.value.assign(K * M, T(0));
    n.iaux.assign(labels.begin(), labels.end());
    std::vector<int> counts(K, 0);
    for (std::size_t i = 0; i < N; ++i) {
      if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= K)
        throw ContractError("group_mean: label out of range at row " + std::to_string(i));
      ++counts[labels[i]];
      for (std::size_t d = 0; d < M; ++d) n.value[labels[i] * M + d] += x.values[i * M + d];
    }
    std::vector<std::uint8_t> present(K, 0);
    for (std::size_t k = 0; k < K; ++k) {
      if (counts[k] > 0) {
        present[k] = 1;
        for (std::size_t d = 0; d < M; ++d) n.value[k * M + d] /= static_cast<T>(counts[k]);
      }
    }
    n.iaux.insert(n.iaux.end(), counts.begin(), counts.end());
    n.mask = present;
    TensorT<T> out = make(std::move(n));
    return {out, present};
  }

  /// Exponential-moving-average blend of per-class centroids:
  ///   present & initialized: out_k = theta * previous_k + (1-theta) * local_k
  ///   present & fresh:       out_k = local_k
  ///   absent:                out_k = previous_k
  /// Gradient flows into `local` only (the historical component is constant);
  /// stop_gradient cuts that path too.
  TensorT<T> ema_blend(const TensorT<T>& local, const TensorT<T>& previous, T theta,
                       const std::vector<std::uint8_t>& present,
                       const std::vector<std::uint8_t>& initialized, bool stop_gradient = false) {
    const std::size_t K = local.rows(), M = local.cols();
    if (previous.shape != local.shape)
      throw DimError("ema_blend: previous " + shape_str(previous.shape) + " vs local " +
                     shape_str(local.shape));
    if (present.size() != K || initialized.size() != K)
      throw DimError("ema_blend: mask sizes do not match class count");
    if (theta < T(0) || theta > T(1)) throw ContractError("ema_blend: theta outside [0,1]");
    for (std::size_t k = 0; k < K; ++k)
      if (present[k])
        for (std::size_t d = 0; d < M; ++d)
          if (!std::isfinite(static_cast<double>(local.values[k * M + d])))
            throw ContractError("ema_blend: non-finite local centroid for class " +
                                std::to_string(k));
    Node n;
    n.op = Op::kEmaBlend;
    n.inputs = {id_of(local)};
    n.shape = local.shape;
    n.scalar = theta;
    n.aux = previous.values;
    n.mask = present;
    n.mask.insert(n.mask.end(), initialized.begin(), initialized.end());
    n.iaux = {stop_gradient ? 1 : 0};
    n.value.resize(K * M);
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t d = 0; d < M; ++d) {
        const T prev = previous.values[k * M + d];
        const T loc = local.values[k * M + d];
        n.value[k * M + d] = !present[k] ? prev : (initialized[k] ? theta * prev + (T(1) - theta) * loc : loc);
      }
    }
    return make(std::move(n));
  }

  /// Cosine similarity of every row of a against every row of b: [N x K].
  TensorT<T> cosine_sim(const TensorT<T>& a, const TensorT<T>& b) {
    const std::size_t N = a.rows(), M = a.cols(), K = b.rows();
    if (b.cols() != M)
      throw DimError("cosine_sim: a " + shape_str(a.shape) + " vs b " + shape_str(b.shape));
    Node n;
    n.op = Op::kCosineSim;
    n.inputs = {id_of(a), id_of(b)};
    n.shape = {N, K};
    n.aux.resize(N + K);
    auto norm_of = [&](const T* v) {
      T ss = T(0);
      for (std::size_t d = 0; d < M; ++d) ss += v[d] * v[d];
      return std::sqrt(ss);
    };
    for (std::size_t i = 0; i < N; ++i) {
      n.aux[i] = norm_of(a.values.data() + i * M);
      if (!(n.aux[i] > T(1e-12))) throw NumericError("cosine_sim: degenerate row in a");
    }
    for (std::size_t k = 0; k < K; ++k) {
      n.aux[N + k] = norm_of(b.values.data() + k * M);
      if (!(n.aux[N + k] > T(1e-12))) throw NumericError("cosine_sim: degenerate row in b");
    }
    n.value.resize(N * K);
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t k = 0; k < K; ++k) {
        T dot = T(0);
        for (std::size_t d = 0; d < M; ++d) dot += a.values[i * M + d] * b.values[k * M + d];
        n.value[i * K + k] = dot / (n.aux[i] * n.aux[N + k]);
      }
    }
    return make(std::move(n));
  }

  /// Contiguous range [offset, offset + numel(shape)) of the flattened input,
  /// reinterpreted with the given shape.
  TensorT<T> slice(const TensorT<T>& x, std::size_t offset, std::vector<std::size_t> shape) {
    const std::size_t len = shape_numel(shape);
    if (offset + len > x.numel())
      throw DimError("slice: range [" + std::to_string(offset) + ", " +
                     std::to_string(offset + len) + ") exceeds " + std::to_string(x.numel()));
    Node n;
    n.op = Op::kSlice;
    n.inputs = {id_of(x)};
    n.shape = std::move(shape);
    n.iaux = {static_cast<int>(offset)};
    n.value.assign(x.values.begin() + offset, x.values.begin() + offset + len);
    return make(std::move(n));
  }

  TensorT<T> add(const TensorT<T>& a, const TensorT<T>& b) {
    if (a.shape != b.shape)
      throw DimError("add: " + shape_str(a.shape) + " vs " + shape_str(b.shape));
    Node n;
    n.op = Op::kAdd;
    n.inputs = {id_of(a), id_of(b)};
    n.shape = a.shape;
    n.value.resize(a.numel());
    for (std::size_t i = 0; i < a.numel(); ++i) n.value[i] = a.values[i] + b.values[i];
    return make(std::move(n));
  }

  TensorT<T> mul(const TensorT<T>& a, const TensorT<T>& b) {
    if (a.shape != b.shape)
      throw DimError("mul: " + shape_str(a.shape) + " vs " + shape_str(b.shape));
    Node n;
    n.op = Op::kMul;
    n.inputs = {id_of(a), id_of(b)};
    n.shape = a.shape;
    n.value.resize(a.numel());
    for (std::size_t i = 0; i < a.numel(); ++i) n.value[i] = a.values[i] * b.values[i];
    return make(std::move(n));
  }

  TensorT<T> scale(const TensorT<T>& x, T a) {
    Node n;
    n.op = Op::kScale;
    n.inputs = {id_of(x)};
    n.shape = x.shape;
    n.scalar = a;
    n.value.resize(x.numel());
    for (std::size_t i = 0; i < x.numel(); ++i) n.value[i] = a * x.values[i];
    return make(std::move(n));
  }

  TensorT<T> sum(const TensorT<T>& x) {
    Node n;
    n.op = Op::kSum;
    n.inputs = {id_of(x)};
    n.shape = {1};
    T total = T(0);
    for (T v : x.values) total += v;
    n.value = {total};
    return make(std::move(n));
  }

  /// Reverse sweep from a recorded scalar. Populates gradients for every node
  /// on a path to the root; everything else reads back as zero.
  void backward(const TensorT<T>& root) {
    const int rid = id_of(root);
    if (!root.is_scalar()) throw ContractError("backward: root must be a scalar");
    grads_.assign(nodes_.size(), {});
    grads_[rid] = {T(1)};
    has_grads_ = true;
    for (int i = rid; i >= 0; --i) {
      if (grads_[i].empty()) continue;
      backward_node(i);
    }
  }

  /// Gradient of the last backward root w.r.t. a recorded tensor.
  TensorT<T> grad(const TensorT<T>& t) const {
    const int id = id_of(t);
    if (!has_grads_)
      throw ContractError("grad: no backward pass has been run on this graph");
    if (grads_[id].empty()) return TensorT<T>::zeros(t.shape);
    TensorT<T> g(t.shape, grads_[id]);
    return g;
  }

  std::size_t size() const { return nodes_.size(); }
  int clamp_events() const { return clamp_events_; }

 private:
  static constexpr T kClampEps = T(1e-12);

  struct Node {
    Op op = Op::kLeaf;
    std::vector<int> inputs;
    std::vector<std::size_t> shape;
    std::vector<T> value;
    std::vector<T> aux;            // op-specific saved floats
    std::vector<int> iaux;         // op-specific saved ints (labels, counts, offsets)
    std::vector<std::uint8_t> mask;
    T scalar = T(0);
  };

  std::vector<Node> nodes_;
  std::vector<std::vector<T>> grads_;
  bool has_grads_ = false;
  int clamp_events_ = 0;

  int id_of(const TensorT<T>& t) const {
    if (t.node < 0 || static_cast<std::size_t>(t.node) >= nodes_.size())
      throw ContractError("tensor is not recorded on this graph");
    return t.node;
  }

  TensorT<T> make(Node&& n) {
    TensorT<T> out(n.shape, n.value);
    nodes_.push_back(std::move(n));
    has_grads_ = false;
    out.node = static_cast<int>(nodes_.size()) - 1;
    return out;
  }

  std::vector<T>& grad_buf(int id) {
    if (grads_[id].empty()) grads_[id].assign(shape_numel(nodes_[id].shape), T(0));
    return grads_[id];
  }

  void backward_node(int id) {
    const Node& n = nodes_[id];
    const std::vector<T>& g = grads_[id];
    switch (n.op) {
      case Op::kLeaf:
        break;
      case Op::kAffine: {
        const Node& x = nodes_[n.inputs[0]];
        const Node& w = nodes_[n.inputs[1]];
        const std::size_t N = x.shape[0], D = x.shape[1], M = w.shape[1];
        CMapMat gy(g.data(), N, M);
        {
          MapMat gx(grad_buf(n.inputs[0]).data(), N, D);
          gx.noalias() += gy * CMapMat(w.value.data(), D, M).transpose();
        }
        {
          MapMat gw(grad_buf(n.inputs[1]).data(), D, M);
          gw.noalias() += CMapMat(x.value.data(), N, D).transpose() * gy;
        }
        {
          std::vector<T>& gb = grad_buf(n.inputs[2]);
          for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < M; ++j) gb[j] += g[i * M + j];
        }
        break;
      }
      case Op::kRelu: {
        const Node& x = nodes_[n.inputs[0]];
        std::vector<T>& gx = grad_buf(n.inputs[0]);
        for (std::size_t i = 0; i < g.size(); ++i)
          if (x.value[i] > T(0)) gx[i] += g[i];
        break;
      }
      case Op::kL2NormRescale: {
        const Node& x = nodes_[n.inputs[0]];
        std::vector<T>& gx = grad_buf(n.inputs[0]);
        const std::size_t N = n.shape[0], D = n.shape[1];
        for (std::size_t i = 0; i < N; ++i) {
          const T norm = n.aux[i];
          const T f = n.scalar / norm;
          T dot = T(0);  // g . xhat
          for (std::size_t d = 0; d < D; ++d)
            dot += g[i * D + d] * x.value[i * D + d] / norm;
          for (std::size_t d = 0; d < D; ++d)
            gx[i * D + d] += f * (g[i * D + d] - dot * x.value[i * D + d] / norm);
        }
        break;
      }
      case Op::kSoftmaxXent: {
        const Node& z = nodes_[n.inputs[0]];
        std::vector<T>& gz = grad_buf(n.inputs[0]);
        const std::size_t N = z.shape[0], K = z.shape[1];
        const T go = g[0] / static_cast<T>(N);
        for (std::size_t i = 0; i < N * K; ++i) gz[i] += go * (n.aux[i] - n.aux[N * K + i]);
        break;
      }
      case Op::kSoftmaxRows: {
        std::vector<T>& gz = grad_buf(n.inputs[0]);
        const std::size_t N = n.shape[0], K = n.shape[1];
        for (std::size_t i = 0; i < N; ++i) {
          T dot = T(0);
          for (std::size_t k = 0; k < K; ++k) dot += g[i * K + k] * n.value[i * K + k];
          for (std::size_t k = 0; k < K; ++k)
            gz[i * K + k] += n.value[i * K + k] * (g[i * K + k] - dot);
        }
        break;
      }
      case Op::kNllOnehot: {
        const Node& p = nodes_[n.inputs[0]];
        std::vector<T>& gp = grad_buf(n.inputs[0]);
        const std::size_t N = p.shape[0], K = p.shape[1];
        const T go = g[0] / static_cast<T>(N);
        for (std::size_t i = 0; i < N; ++i) {
          const T pv = p.value[i * K + n.iaux[i]];
          if (pv >= kClampEps) gp[i * K + n.iaux[i]] -= go / pv;
          // below the clamp the forward value is constant, so the gradient is 0
        }
        break;
      }
      case Op::kGroupMean: {
        const Node& x = nodes_[n.inputs[0]];
        std::vector<T>& gx = grad_buf(n.inputs[0]);
        const std::size_t N = x.shape[0], M = x.shape[1], K = n.shape[0];
        const int* labels = n.iaux.data();
        const int* counts = n.iaux.data() + N;
        (void)K;
        for (std::size_t i = 0; i < N; ++i) {
          const int k = labels[i];
          const T inv = T(1) / static_cast<T>(counts[k]);
          for (std::size_t d = 0; d < M; ++d) gx[i * M + d] += g[k * M + d] * inv;
        }
        break;
      }
      case Op::kEmaBlend: {
        if (n.iaux[0]) break;  // stop-gradient
        std::vector<T>& gl = grad_buf(n.inputs[0]);
        const std::size_t K = n.shape[0], M = n.shape[1];
        for (std::size_t k = 0; k < K; ++k) {
          if (!n.mask[k]) continue;  // absent: output is the constant previous row
          const T coef = n.mask[K + k] ? (T(1) - n.scalar) : T(1);
          for (std::size_t d = 0; d < M; ++d) gl[k * M + d] += coef * g[k * M + d];
        }
        break;
      }
      case Op::kCosineSim: {
        const Node& a = nodes_[n.inputs[0]];
        const Node& b = nodes_[n.inputs[1]];
        std::vector<T>& ga = grad_buf(n.inputs[0]);
        std::vector<T>& gb = grad_buf(n.inputs[1]);
        const std::size_t N = n.shape[0], K = n.shape[1], M = a.shape[1];
        for (std::size_t i = 0; i < N; ++i) {
          const T na = n.aux[i];
          for (std::size_t k = 0; k < K; ++k) {
            const T gik = g[i * K + k];
            if (gik == T(0)) continue;
            const T nb = n.aux[N + k];
            const T c = n.value[i * K + k];
            for (std::size_t d = 0; d < M; ++d) {
              const T av = a.value[i * M + d];
              const T bv = b.value[k * M + d];
              ga[i * M + d] += gik * (bv / (na * nb) - c * av / (na * na));
              gb[k * M + d] += gik * (av / (na * nb) - c * bv / (nb * nb));
            }
          }
        }
        break;
      }
      case Op::kSlice: {
        std::vector<T>& gx = grad_buf(n.inputs[0]);
        const std::size_t off = static_cast<std::size_t>(n.iaux[0]);
        for (std::size_t i = 0; i < g.size(); ++i) gx[off + i] += g[i];
        break;
      }
      case Op::kAdd: {
        std::vector<T>& ga = grad_buf(n.inputs[0]);
        for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
        std::vector<T>& gb = grad_buf(n.inputs[1]);
        for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i];
        break;
      }
      case Op::kMul: {
        const Node& a = nodes_[n.inputs[0]];
        const Node& b = nodes_[n.inputs[1]];
        std::vector<T>& ga = grad_buf(n.inputs[0]);
        for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * b.value[i];
        std::vector<T>& gb = grad_buf(n.inputs[1]);
        for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i] * a.value[i];
        break;
      }
      case Op::kScale: {
        std::vector<T>& gx = grad_buf(n.inputs[0]);
        for (std::size_t i = 0; i < g.size(); ++i) gx[i] += n.scalar * g[i];
        break;
      }
      case Op::kSum: {
        std::vector<T>& gx = grad_buf(n.inputs[0]);
        for (std::size_t i = 0; i < gx.size(); ++i) gx[i] += g[0];
        break;
      }
    }
  }
};

using Graph = GraphT<float>;
using Graph64 = GraphT<double>;

}  // namespace clcn
