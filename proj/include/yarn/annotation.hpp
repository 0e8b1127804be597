#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "yarn/params.hpp"

namespace yarn {

inline constexpr std::string_view kGeneratorVersion = "yarngen-1.0";

/// Everything besides the model parameters needed to regenerate a sample.
struct GenerationSettings {
  double total_length = 0.0;  // <= 0: derived from image width and scale
  int helix_resolution = kDefaultHelixResolution;
  int width = 2000;
  int height = 600;
  double scale = 0.0;  // <= 0: default_scale(height)

  friend bool operator==(const GenerationSettings&, const GenerationSettings&) = default;
};

/// Resolves the derived defaults (scale, total length).
GenerationSettings resolved(GenerationSettings gen);

/// One dataset label: parameters, seed and generation settings.
struct Annotation {
  std::string id;
  std::uint64_t seed = 0;
  YarnParams params;
  GenerationSettings gen;
  std::string generator_version{kGeneratorVersion};

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

/// Model parameter keys, named as in the parameter table.
inline constexpr std::array<std::string_view, 20> kParameterKeys = {
    "m", "t_x", "t_y", "alpha", "n", "r_x", "r_y", "alpha_ply", "R_ply", "j_z",
    "j", "j_xy", "g", "p", "beta", "l_hair", "s", "l_loop", "d_mean", "d_std"};

nlohmann::json to_json(const Annotation& a);
/// Full record; throws FormatError when a required key is missing.
Annotation annotation_from_json(const nlohmann::json& j);

nlohmann::json level_to_json(const LevelSpec& l);
LevelSpec level_from_json(const nlohmann::json& j);

/// Applies whichever parameter / generation keys are present in `j`.
/// Integer parameters accept real values and are rounded.
void apply_overrides(YarnParams& params, GenerationSettings& gen, const nlohmann::json& j);

/// Reads a model parameter by its table key.
double get_parameter(const YarnParams& params, std::string_view key);
void set_parameter(YarnParams& params, std::string_view key, double value);

void write_annotation(const std::filesystem::path& path, const Annotation& a);
Annotation read_annotation(const std::filesystem::path& path);
nlohmann::json read_json(const std::filesystem::path& path);

struct ManifestRow {
  std::string id;
  std::uint64_t seed = 0;
  std::string image_path;
  std::string annotation_path;
  std::string curve_path;  // empty when curves were not written
  std::string curve_hash;  // FNV-1a of the encoded curve file, hex
  int width = 0;
  int height = 0;
  std::string split;

  friend bool operator==(const ManifestRow&, const ManifestRow&) = default;
};

nlohmann::json to_json(const ManifestRow& row);
ManifestRow manifest_row_from_json(const nlohmann::json& j);

/// JSON-lines, one record per sample.
void write_manifest(const std::filesystem::path& path, const std::vector<ManifestRow>& rows);
std::vector<ManifestRow> read_manifest(const std::filesystem::path& path);

}  // namespace yarn
