#include "yarn/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "yarn/curve_io.hpp"
#include "yarn/pipeline.hpp"
#include "yarn/png_io.hpp"

namespace fs = std::filesystem;

namespace yarn {

namespace {

std::string sample_id(int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%06d", i);
  return buf;
}

ManifestRow write_sample(const DatasetConfig& cfg, int index) {
  const std::string id = sample_id(index);
  const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(index);
  const YarnSample sample = render_sample(sample_annotation(seed, cfg.gen, id));

  ManifestRow row;
  row.id = id;
  row.seed = seed;
  row.image_path = "images/" + id + ".png";
  row.annotation_path = "annotations/" + id + ".json";
  row.width = sample.image.width;
  row.height = sample.image.height;
  row.split = index >= cfg.count - cfg.val_count ? "val" : "train";

  const std::string curves = encode_curves(sample.curves);
  row.curve_hash = hex64(fnv1a64(curves));
  if (cfg.write_curves) {
    row.curve_path = "curves/" + id + ".yfc";
    write_file(cfg.out_dir / row.curve_path, curves);
  }
  write_png(cfg.out_dir / row.image_path, sample.image);
  write_annotation(cfg.out_dir / row.annotation_path, sample.annotation);
  return row;
}

void make_dirs(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

}  // namespace

DatasetConfig full_scale_config(fs::path out_dir, std::uint64_t base_seed) {
  DatasetConfig c;
  c.count = 4345;
  c.val_count = 345;
  c.base_seed = base_seed;
  c.gen.width = 2000;
  c.gen.height = 600;
  c.crop_width = 1200;
  c.crop_height = 584;
  c.out_dir = std::move(out_dir);
  return c;
}

DatasetResult generate_dataset(const DatasetConfig& config) {
  if (config.count < 0) throw InvalidParameter("sample count must be >= 0");
  if (config.val_count < 0 || config.val_count > config.count)
    throw InvalidParameter("validation count must lie in [0, count]");
  DatasetConfig cfg = config;
  cfg.gen = resolved(cfg.gen);
  if (cfg.crop_width <= 0) cfg.crop_width = static_cast<int>(std::lround(cfg.gen.width * 0.6));
  if (cfg.crop_height <= 0)
    cfg.crop_height = static_cast<int>(std::lround(cfg.gen.height * 584.0 / 600.0));

  make_dirs(cfg.out_dir / "images");
  make_dirs(cfg.out_dir / "annotations");
  if (cfg.write_curves) make_dirs(cfg.out_dir / "curves");

  std::vector<std::optional<ManifestRow>> rows(static_cast<std::size_t>(cfg.count));
  std::mutex error_mutex;
  std::string first_error;

  const int threads = std::clamp(cfg.threads, 1, std::max(1, cfg.count));
  auto worker = [&](int t) {
    for (int i = t; i < cfg.count; i += threads) {
      try {
        rows[static_cast<std::size_t>(i)] = write_sample(cfg, i);
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        if (first_error.empty()) first_error = "sample " + sample_id(i) + ": " + e.what();
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  }

  DatasetResult result;
  for (auto& r : rows)
    if (r) result.rows.push_back(std::move(*r));

  result.metadata = {{"generator_version", kGeneratorVersion},
                     {"base_seed", cfg.base_seed},
                     {"count", cfg.count},
                     {"width", cfg.gen.width},
                     {"height", cfg.gen.height},
                     {"scale", cfg.gen.scale},
                     {"total_length", cfg.gen.total_length},
                     {"helix_resolution", cfg.gen.helix_resolution},
                     {"split", {{"train", cfg.count - cfg.val_count}, {"val", cfg.val_count}}},
                     {"crop", {{"width", cfg.crop_width}, {"height", cfg.crop_height}}},
                     {"full_scale", cfg.count == 4345 && cfg.val_count == 345 &&
                                        cfg.gen.width == 2000 && cfg.gen.height == 600}};

  // Single writer for the manifest, after all workers are done.
  write_manifest(cfg.out_dir / "manifest.jsonl", result.rows);
  write_file(cfg.out_dir / "dataset.json", result.metadata.dump(2) + "\n");
  if (!first_error.empty())
    throw IoError(std::to_string(result.rows.size()) + " of " + std::to_string(cfg.count) +
                  " samples written (partial manifest): " + first_error);
  return result;
}

VerifyReport verify_dataset(const fs::path& dir) {
  VerifyReport report;
  for (const ManifestRow& row : read_manifest(dir / "manifest.jsonl")) {
    ++report.checked;
    const Annotation a = read_annotation(dir / row.annotation_path);
    if (a.seed != row.seed) {
      report.mismatches.push_back(row.id + ": seed differs from annotation");
      continue;
    }
    const YarnSample s = render_sample(a);
    const std::string curves = encode_curves(s.curves);
    if (!row.curve_hash.empty() && hex64(fnv1a64(curves)) != row.curve_hash)
      report.mismatches.push_back(row.id + ": curve hash differs");
    if (!row.curve_path.empty() && read_file(dir / row.curve_path) != curves)
      report.mismatches.push_back(row.id + ": curve file differs");
    const GrayImage img = read_png(dir / row.image_path);
    if (img.width != row.width || img.height != row.height)
      report.mismatches.push_back(row.id + ": image size differs from manifest");
    if (!(img == s.image)) report.mismatches.push_back(row.id + ": image pixels differ");
  }
  return report;
}

}  // namespace yarn
