#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "yarn/annotation.hpp"

namespace yarn {

struct DatasetConfig {
  int count = 0;
  std::uint64_t base_seed = 0;
  GenerationSettings gen;
  std::filesystem::path out_dir;
  bool write_curves = false;
  int threads = 1;
  /// The last `val_count` samples form the validation split.
  int val_count = 0;
  /// Training crop size recorded for consumers; <= 0 derives it from the
  /// image size (1200x584 at 2000x600).
  int crop_width = 0;
  int crop_height = 0;
};

/// Full-scale layout: 4000 training and 345 validation samples at 2000x600,
/// cropped to 1200x584 for training.
DatasetConfig full_scale_config(std::filesystem::path out_dir, std::uint64_t base_seed);

struct DatasetResult {
  std::vector<ManifestRow> rows;
  nlohmann::json metadata;
};

/// Writes images/, annotations/, optionally curves/, manifest.jsonl and
/// dataset.json under out_dir. Sample i uses seed base_seed + i. On an I/O
/// failure the completed rows are still written to manifest.jsonl and an
/// IoError naming the count is thrown.
DatasetResult generate_dataset(const DatasetConfig& config);

struct VerifyReport {
  int checked = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// Regenerates every manifest row from its annotation and compares curves
/// (file or hash) and image pixels with what is on disk.
VerifyReport verify_dataset(const std::filesystem::path& dir);

}  // namespace yarn
