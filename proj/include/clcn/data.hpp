#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "clcn/rng.hpp"
#include "clcn/tensor.hpp"

namespace clcn {

enum class Domain { kSource, kTarget };

/// A labeled source or unlabeled target sample collection. Target datasets
/// may carry ground-truth labels for evaluation, but the training path can
/// only reach labels through the counted accessors; `eval_labels` is the
/// uncounted evaluation-only channel, so a zero `label_reads()` after
/// training proves label hygiene.
class DomainDataset {
 public:
  DomainDataset(Tensor samples, std::vector<int> labels, int num_classes, Domain domain);

  const Tensor& samples() const { return samples_; }
  std::size_t size() const { return samples_.rows(); }
  std::size_t dim() const { return samples_.cols(); }
  int num_classes() const { return num_classes_; }
  Domain domain() const { return domain_; }
  bool has_labels() const { return !labels_.empty(); }

  /// Counted access, for the training path (source supervision).
  const std::vector<int>& labels() const {
    ++label_reads_;
    return labels_;
  }

  /// Uncounted access, for evaluation only.
  const std::vector<int>& eval_labels() const { return labels_; }

  std::uint64_t label_reads() const { return label_reads_; }
  void reset_label_reads() const { label_reads_ = 0; }

  /// Content hash over samples, labels and metadata (FNV-1a, 64-bit).
  std::uint64_t fingerprint() const;

 private:
  Tensor samples_;
  std::vector<int> labels_;
  int num_classes_;
  Domain domain_;
  mutable std::uint64_t label_reads_ = 0;
};

/// Uniform-with-replacement episode sampling with a deterministic stream.
/// Balanced mode cycles batch slots through the classes so every class is
/// present whenever the batch size is at least the class count; it requires
/// a labeled dataset.
class BatchSampler {
 public:
  BatchSampler(std::uint64_t seed, int batch_size, bool balanced = false);

  int batch_size() const { return batch_size_; }
  bool balanced() const { return balanced_; }

 private:
  friend struct Batch;
  friend Batch sample_batch(const DomainDataset& ds, BatchSampler& sampler);
  Rng rng_;
  int batch_size_;
  bool balanced_;
};

struct Batch {
  Tensor x;
  std::vector<int> labels;  // empty for target batches
};

/// Draws one batch. Source batches carry labels; target batches never touch
/// the label store.
Batch sample_batch(const DomainDataset& ds, BatchSampler& sampler);

// ---- IDX ingestion (big-endian headers, bit-exact) ----

/// Images: magic 2051, dims (N, rows, cols), u8 pixels mapped to [0,1] by
/// /255 and resized to side x side by nearest neighbor.
Tensor load_idx_images(const std::filesystem::path& path, int side = 28);

/// Labels: magic 2049, one u8 per sample.
std::vector<int> load_idx_labels(const std::filesystem::path& path);

void write_idx_images(const std::filesystem::path& path, const std::vector<std::uint8_t>& pixels,
                      int count, int rows, int cols);
void write_idx_labels(const std::filesystem::path& path, const std::vector<std::uint8_t>& labels);

/// Pairs an image file with a label file into a dataset; `limit` > 0 keeps
/// the first `limit` samples.
DomainDataset load_idx_dataset(const std::filesystem::path& images,
                               const std::filesystem::path& labels, int num_classes,
                               Domain domain, int side = 28, std::size_t limit = 0);

// ---- Synthetic domain-shift generators ----

struct ShiftedGaussiansSpec {
  int num_classes = 4;
  int per_class = 200;
  int dim = 2;
  std::vector<float> shift;  // translation applied to the target domain
  float rotation = 0.0f;     // radians, applied in the first two dims
  float noise = 0.25f;
  std::uint64_t seed = 0;
};

/// Source classes sit at K points on the unit circle (first two dims) with
/// isotropic noise; the target distribution is the source one rotated then
/// translated. Both domains carry ground-truth labels; target labels are for
/// evaluation only.
std::pair<DomainDataset, DomainDataset> gen_shifted_gaussians(const ShiftedGaussiansSpec& spec);

/// Two interleaved half circles (class 0 is the lower moon), n points total;
/// the target copy is rotated about the centroid of the construction.
std::pair<DomainDataset, DomainDataset> gen_two_moons_pair(int n, float noise,
                                                           float target_rotation,
                                                           std::uint64_t seed);

// ---- CSV export/import: header x0,...,x{d-1},label,domain ----

void write_dataset_csv(const std::filesystem::path& path, const DomainDataset& source,
                       const DomainDataset& target);
std::pair<DomainDataset, DomainDataset> load_dataset_csv(const std::filesystem::path& path);

}  // namespace clcn
