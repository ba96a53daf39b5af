#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>

#include "clcn/data.hpp"
#include "clcn/trainer.hpp"

namespace clcn {

/// Parsed "data" section of a run config.
struct DataSpec {
  enum class Kind { kShiftedGaussians, kTwoMoons, kIdx, kCsv } kind = Kind::kShiftedGaussians;

  ShiftedGaussiansSpec gaussians;

  // two_moons
  int moons_n = 400;
  float moons_noise = 0.1f;
  float moons_rotation = 0.0f;
  std::uint64_t moons_seed = 0;

  // idx
  std::filesystem::path source_images, source_labels, target_images, target_labels;
  int idx_classes = 10;
  int image_side = 28;
  std::size_t source_limit = 0, target_limit = 0;

  // csv
  std::filesystem::path csv_path;
};

struct RunSpec {
  DataSpec data;
  TrainConfig train;
  bool model_given = false;  // architecture was explicit, not defaulted by kind
};

/// Loads and validates a JSON run config. Unknown keys anywhere are a hard
/// error. The architecture's input_dim and num_classes come from the data.
RunSpec load_run_spec(const std::filesystem::path& path);
RunSpec parse_run_spec(const std::string& json_text);

std::pair<DomainDataset, DomainDataset> build_datasets(const DataSpec& spec);

/// Config echo used in manifests and checkpoint sidecars.
std::string run_spec_json(const RunSpec& spec);

}  // namespace clcn
