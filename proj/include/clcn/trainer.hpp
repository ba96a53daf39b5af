#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "clcn/centroids.hpp"
#include "clcn/data.hpp"
#include "clcn/model.hpp"

namespace clcn {

enum class Variant {
  kClcn,              // classification + cycle label-consistency
  kSourceOnly,        // classification loss only, no bank machinery
  kSoftmaxCycle,      // pseudo-labels from softmax heads instead of NCC
  kNccFinetune,       // hard NCC pseudo-labels feed a target CE term, no cycle
  kCyclePlusFinetune  // cycle loss and the finetuning term together
};

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

struct OptimConfig {
  float momentum = 0.9f;
  float weight_decay = 5e-4f;
};

struct TrainConfig {
  Architecture arch;
  int batch_size = 128;
  int episodes = 5000;
  OptimConfig optim;
  ScheduleConfig schedule;
  float theta = 0.7f;
  Variant variant = Variant::kClcn;
  std::uint64_t seed = 1;
  int eval_every = 100;
  bool balanced_source = true;
  CentroidGrad centroid_grad = CentroidGrad::kLocal;

  void validate() const;
};

struct TraceRow {
  int episode = 0;
  float loss_c = 0;
  float loss_cyc = 0;
  float alpha = 0;
  float lr = 0;
  float src_acc = 0;
  float tgt_acc = 0;
  // Sentinel -1 when not tracked: variants without banks, unlabeled targets,
  // or banks not yet fully initialized.
  float centroid_dist = -1;
};

struct RunResult {
  std::vector<TraceRow> trace;
  ModelParams params;
  CentroidBank source_bank;
  CentroidBank target_bank;
  std::vector<Tensor> velocity;  // optimizer state, parameter declaration order
  TrainConfig config;
  double wall_seconds = 0;
  std::uint64_t clamp_events = 0;
  int cycle_inactive_episodes = 0;  // episodes spent before both banks completed
};

/// Classical SGD with momentum and coupled weight decay:
///   v <- momentum * v + grad + wd * param;  param <- param - lr * v
/// Gradients and velocity follow the parameter declaration order.
void sgd_step(ModelParams& params, const std::vector<Tensor>& grads, std::vector<Tensor>& velocity,
              float lr, float momentum, float weight_decay);

/// Runs the episode loop: sample a batch per domain, compute the variant's
/// episode loss with alpha = alpha_schedule(t/T) and lr = lr_schedule(t/T),
/// backpropagate, step. Deterministic given (config, seed). Target labels are
/// never touched on the training path; evaluation snapshots use the
/// dataset's uncounted eval accessor.
RunResult train(const DomainDataset& source, const DomainDataset& target, const TrainConfig& cfg);

/// Alias of train for sweeps that vary cfg.variant.
RunResult run_variant(const DomainDataset& source, const DomainDataset& target,
                      const TrainConfig& cfg);

/// Full run checkpoint: the parameter format extended with both centroid
/// banks and the optimizer velocity.
void save_checkpoint(const std::filesystem::path& path, const RunResult& run);

struct Checkpoint {
  ModelParams params;
  std::optional<CentroidBank> source_bank;
  std::optional<CentroidBank> target_bank;
  std::vector<Tensor> velocity;
};
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace clcn
