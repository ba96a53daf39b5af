#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "clcn/data.hpp"
#include "clcn/trainer.hpp"

namespace clcn {

struct RunManifest {
  std::string tool_version;
  std::uint64_t seed = 0;
  std::uint64_t source_fingerprint = 0;
  std::uint64_t target_fingerprint = 0;
  std::filesystem::path trace_csv;
  std::filesystem::path checkpoint;
  std::filesystem::path svg;
  std::filesystem::path manifest;
};

/// Exact trace schema: episode,loss_c,loss_cyc,alpha,lr,src_acc,tgt_acc,centroid_dist
void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& trace);
std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path);

/// Scatter of 2-d points, source in a warm palette and target in a cool one,
/// shaded per class. Emits exactly one point element per sample.
std::string render_scatter_svg(const Tensor& source_xy, const std::vector<int>& source_labels,
                               const Tensor& target_xy, const std::vector<int>& target_labels,
                               int num_classes);

/// Writes trace CSV, checkpoint, an SVG of PCA-projected embeddings of both
/// domains under the final parameters, and a JSON manifest tying them
/// together. Output is byte-reproducible for the same RunResult.
RunManifest emit_report(const RunResult& run, const DomainDataset& source,
                        const DomainDataset& target, const std::filesystem::path& out_dir);

}  // namespace clcn
