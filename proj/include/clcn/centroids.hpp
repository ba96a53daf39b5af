#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "clcn/errors.hpp"
#include "clcn/graph.hpp"
#include "clcn/model.hpp"
#include "clcn/tensor.hpp"

namespace clcn {

/// Per-class global centroids of one domain, tracked across episodes by an
/// exponential moving average with trade-off theta. A class row is unusable
/// until its first observation initializes it.
template <typename T>
struct CentroidBankT {
  TensorT<T> centroids;                    // [K x M]
  std::vector<std::uint8_t> initialized;   // per class
  T theta = T(0.7);

  static CentroidBankT make(int num_classes, int embed_dim, T theta) {
    if (theta < T(0) || theta > T(1)) throw ContractError("centroid bank: theta outside [0,1]");
    CentroidBankT b;
    b.centroids = TensorT<T>::zeros(
        {static_cast<std::size_t>(num_classes), static_cast<std::size_t>(embed_dim)});
    b.initialized.assign(num_classes, 0);
    b.theta = theta;
    return b;
  }

  std::size_t num_classes() const { return centroids.rows(); }
  std::size_t embed_dim() const { return centroids.cols(); }

  bool fully_initialized() const {
    for (auto v : initialized)
      if (!v) return false;
    return true;
  }
};

using CentroidBank = CentroidBankT<float>;

inline CentroidBankT<double> to_shadow(const CentroidBank& b) {
  CentroidBankT<double> out;
  out.centroids = cast<double>(b.centroids);
  out.initialized = b.initialized;
  out.theta = static_cast<double>(b.theta);
  return out;
}

/// Mean embedding per class over one batch. Row k of the result is the mean
/// of feature rows labeled k; classes absent from the batch get a zero row
/// and a false mask entry.
template <typename T>
std::pair<TensorT<T>, std::vector<std::uint8_t>> local_centroids(const TensorT<T>& features,
                                                                 const std::vector<int>& labels,
                                                                 int num_classes) {
  GraphT<T> scratch;
  auto [out, present] = scratch.group_mean(scratch.var(features), labels, num_classes);
  out.node = -1;
  return {out, present};
}

/// EMA update of the global centroids from batch-local ones:
/// c_k <- theta * c_k + (1 - theta) * local_k for present, initialized rows;
/// a first observation initializes the row to the local centroid; absent
/// classes are carried over unchanged.
template <typename T>
CentroidBankT<T> ema_update(const CentroidBankT<T>& bank, const TensorT<T>& local,
                            const std::vector<std::uint8_t>& present) {
  const std::size_t K = bank.num_classes(), M = bank.embed_dim();
  if (local.rows() != K || local.cols() != M)
    throw DimError("ema_update: local " + shape_str(local.shape) + " vs bank " +
                   shape_str(bank.centroids.shape));
  if (present.size() != K) throw DimError("ema_update: mask size does not match class count");
  CentroidBankT<T> out = bank;
  for (std::size_t k = 0; k < K; ++k) {
    if (!present[k]) continue;
    for (std::size_t d = 0; d < M; ++d) {
      const T loc = local.values[k * M + d];
      if (!std::isfinite(static_cast<double>(loc)))
        throw ContractError("ema_update: non-finite local centroid for class " + std::to_string(k));
      out.centroids.values[k * M + d] =
          bank.initialized[k] ? bank.theta * bank.centroids.values[k * M + d] + (T(1) - bank.theta) * loc
                              : loc;
    }
    out.initialized[k] = 1;
  }
  return out;
}

namespace detail {
template <typename T>
void require_initialized(const CentroidBankT<T>& bank, const char* what) {
  if (!bank.fully_initialized())
    throw ContractError(std::string(what) + ": centroid bank has uninitialized classes");
}
}  // namespace detail

/// Hard cross-domain assignment: each feature row gets the class of its most
/// cosine-similar centroid. Ties break toward the lowest class index. Not
/// differentiable by construction; operates on plain values.
template <typename T>
std::vector<int> ncc_assign(const TensorT<T>& features, const CentroidBankT<T>& bank) {
  detail::require_initialized(bank, "ncc_assign");
  const std::size_t N = features.rows(), M = features.cols(), K = bank.num_classes();
  if (bank.embed_dim() != M)
    throw DimError("ncc_assign: feature width " + std::to_string(M) + " vs bank " +
                   shape_str(bank.centroids.shape));
  std::vector<T> cnorm(K);
  for (std::size_t k = 0; k < K; ++k) {
    T ss = T(0);
    for (std::size_t d = 0; d < M; ++d) {
      const T v = bank.centroids.values[k * M + d];
      ss += v * v;
    }
    cnorm[k] = std::sqrt(ss);
    if (!(cnorm[k] > T(1e-12))) throw NumericError("ncc_assign: degenerate centroid");
  }
  std::vector<int> labels(N);
  for (std::size_t i = 0; i < N; ++i) {
    T fnorm = T(0);
    for (std::size_t d = 0; d < M; ++d) fnorm += features.values[i * M + d] * features.values[i * M + d];
    fnorm = std::sqrt(fnorm);
    if (!(fnorm > T(1e-12))) throw NumericError("ncc_assign: degenerate feature row");
    int best = 0;
    T best_sim = T(0);
    for (std::size_t k = 0; k < K; ++k) {
      T dot = T(0);
      for (std::size_t d = 0; d < M; ++d) dot += features.values[i * M + d] * bank.centroids.values[k * M + d];
      const T sim = dot / (fnorm * cnorm[k]);
      if (k == 0 || sim > best_sim) {
        best = static_cast<int>(k);
        best_sim = sim;
      }
    }
    labels[i] = best;
  }
  return labels;
}

/// Soft cross-domain scores: per row, softmax over the cosine similarities to
/// all centroids of the other domain. Differentiable w.r.t. the features and
/// the centroid tensor when called through a graph.
template <typename T>
TensorT<T> soft_scores(GraphT<T>& g, const TensorT<T>& features, const TensorT<T>& centroids) {
  const TensorT<T>& f = features;
  const TensorT<T>& c = centroids;
  return g.softmax_rows(g.cosine_sim(f.node >= 0 ? f : g.var(f), c.node >= 0 ? c : g.var(c)));
}

/// Value-level convenience against a bank.
template <typename T>
TensorT<T> soft_scores(const TensorT<T>& features, const CentroidBankT<T>& bank) {
  detail::require_initialized(bank, "soft_scores");
  GraphT<T> scratch;
  TensorT<T> out = soft_scores(scratch, features, bank.centroids);
  out.node = -1;
  return out;
}

/// Cross-entropy of ground-truth labels against soft pseudo-label scores:
/// -(1/N) sum_i log scores[i, labels[i]].
template <typename T>
TensorT<T> cycle_loss(GraphT<T>& g, const TensorT<T>& scores, const std::vector<int>& labels) {
  return g.nll_onehot(scores, labels);
}

/// Mean cross-entropy of ground-truth labels against predicted distributions.
template <typename T>
TensorT<T> classification_loss(GraphT<T>& g, const TensorT<T>& probs, const std::vector<int>& labels) {
  return g.nll_onehot(probs, labels);
}

enum class LrMode { kConstant, kAnnealed };

/// Ramp of the cycle-loss weight over training progress p in [0,1]:
/// alpha(p) = alpha0 * (2 / (1 + exp(-gamma p)) - 1), i.e. alpha0 * tanh(gamma p / 2).
inline double alpha_schedule(double p, double alpha0, double gamma) {
  if (!(p >= 0.0 && p <= 1.0)) throw ContractError("alpha_schedule: p outside [0,1]");
  return alpha0 * (2.0 / (1.0 + std::exp(-gamma * p)) - 1.0);
}

/// Learning rate over progress: constant mu0, or mu0 / (1 + gamma p)^beta.
inline double lr_schedule(double p, double mu0, double gamma, double beta, LrMode mode) {
  if (!(p >= 0.0 && p <= 1.0)) throw ContractError("lr_schedule: p outside [0,1]");
  if (mode == LrMode::kConstant) return mu0;
  return mu0 / std::pow(1.0 + gamma * p, beta);
}

struct ScheduleConfig {
  double alpha0 = 2.5;
  double alpha_gamma = 10.0;
  double mu0 = 0.01;
  double lr_gamma = 10.0;
  double lr_beta = 0.75;
  LrMode lr_mode = LrMode::kConstant;

  void validate() const {
    if (alpha0 < 0.0) throw ConfigError("schedule: alpha0 must be >= 0");
    if (alpha_gamma <= 0.0) throw ConfigError("schedule: alpha gamma must be positive");
    if (mu0 <= 0.0) throw ConfigError("schedule: mu0 must be positive");
    if (lr_beta <= 0.0) throw ConfigError("schedule: beta must be positive");
  }
};

/// Whether the cycle loss may differentiate through the local component of
/// the target bank update, or treats the whole bank as a constant.
enum class CentroidGrad { kLocal, kDetached };

template <typename T>
struct EpisodeLossT {
  T classification = T(0);
  T cycle = T(0);
  T alpha = T(0);
  T total = T(0);
};

template <typename T>
struct EpisodeResultT {
  TensorT<T> total;  // recorded scalar, root for backward
  EpisodeLossT<T> losses;
  CentroidBankT<T> source_bank;
  CentroidBankT<T> target_bank;
  std::vector<int> target_pseudo;  // empty while the source bank is incomplete
  bool cycle_active = false;
  int clamp_events = 0;
};

/// One training episode's loss, staged as: source local centroids + EMA;
/// hard target pseudo-labels by nearest source centroid; target pseudo-class
/// centroids + EMA; soft scores of source samples against target centroids;
/// cycle loss against source ground truth; source classification loss;
/// total = classification + alpha * cycle.
///
/// Until both banks have every class initialized (possible in the first few
/// episodes), the stages that need a complete bank are skipped for the
/// episode and the total degenerates to the classification loss alone.
template <typename T>
EpisodeResultT<T> episode_loss(GraphT<T>& g, const ModelParamsT<T>& params,
                               const TensorT<T>& source_x, const std::vector<int>& source_y,
                               const TensorT<T>& target_x, const CentroidBankT<T>& source_bank,
                               const CentroidBankT<T>& target_bank, T alpha,
                               CentroidGrad grad_mode = CentroidGrad::kLocal) {
  if (source_x.rows() == 0 || target_x.rows() == 0)
    throw ContractError("episode_loss: empty batch");
  if (alpha < T(0)) throw ContractError("episode_loss: alpha must be >= 0");
  const int K = params.arch.num_classes;

  EpisodeResultT<T> result;
  result.losses.alpha = alpha;

  TensorT<T> source_feat = embed(g, params, source_x);
  TensorT<T> target_feat = embed(g, params, target_x);

  // Source bank update feeds only the (non-differentiable) hard assignment,
  // so it runs on plain values.
  {
    auto [local, present] = local_centroids(source_feat, source_y, K);
    result.source_bank = ema_update(source_bank, local, present);
  }

  result.target_bank = target_bank;
  bool cycle_possible = result.source_bank.fully_initialized();
  if (cycle_possible) {
    result.target_pseudo = ncc_assign(target_feat, result.source_bank);

    // Target bank update stays on the graph: the local-centroid component is
    // the gradient path from the cycle loss into the target branch.
    auto [tgt_local, tgt_present] = g.group_mean(target_feat, result.target_pseudo, K);
    TensorT<T> tgt_centroids =
        g.ema_blend(tgt_local, target_bank.centroids, target_bank.theta, tgt_present,
                    target_bank.initialized, grad_mode == CentroidGrad::kDetached);
    result.target_bank.centroids = TensorT<T>(tgt_centroids.shape, tgt_centroids.values);
    for (int k = 0; k < K; ++k)
      if (tgt_present[k]) result.target_bank.initialized[k] = 1;

    if (result.target_bank.fully_initialized()) {
      TensorT<T> scores = soft_scores(g, source_feat, tgt_centroids);
      TensorT<T> l_cyc = cycle_loss(g, scores, source_y);
      TensorT<T> l_c = g.softmax_cross_entropy(head_logits(g, params, source_feat),
                                               onehot<T>(source_y, K));
      result.total = g.add(l_c, g.scale(l_cyc, alpha));
      result.losses.classification = l_c.item();
      result.losses.cycle = l_cyc.item();
      result.cycle_active = true;
    }
  }

  if (!result.cycle_active) {
    TensorT<T> l_c = g.softmax_cross_entropy(head_logits(g, params, source_feat),
                                             onehot<T>(source_y, K));
    result.total = l_c;
    result.losses.classification = l_c.item();
  }
  result.losses.total = result.losses.classification + alpha * result.losses.cycle;
  result.clamp_events = g.clamp_events();
  return result;
}

}  // namespace clcn
