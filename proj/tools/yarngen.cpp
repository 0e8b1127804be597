// yarngen: procedural yarn generation, dataset synthesis, editing and
// inspection.
//
// Exit codes: 0 ok, 2 validation error, 3 I/O or format error.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "yarn/annotation.hpp"
#include "yarn/curve_io.hpp"
#include "yarn/dataset.hpp"
#include "yarn/pipeline.hpp"
#include "yarn/png_io.hpp"
#include "yarn/sampler.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string flag_name(std::string_view key) {
  std::string name(key);
  std::replace(name.begin(), name.end(), '_', '-');
  return "--" + name;
}

struct ImageFlags {
  int width = 2000;
  int height = 600;
  double scale = 0.0;
  double length = 0.0;
  int resolution = yarn::kDefaultHelixResolution;

  void add(CLI::App& app) {
    app.add_option("--width", width, "Image width in pixels")->check(CLI::PositiveNumber);
    app.add_option("--height", height, "Image height in pixels")->check(CLI::PositiveNumber);
    app.add_option("--scale", scale, "Pixels per model unit (default: fit the largest yarn)");
    app.add_option("--length", length, "Yarn length in model units (default: image width)");
    app.add_option("--resolution", resolution, "Helix vertices per turn")->check(CLI::Range(3, 4096));
  }

  yarn::GenerationSettings settings() const {
    yarn::GenerationSettings g;
    g.width = width;
    g.height = height;
    g.scale = scale;
    g.total_length = length;
    g.helix_resolution = resolution;
    return yarn::resolved(g);
  }
};

struct OutputFlags {
  std::string prefix = "yarn";
  std::string crop;
  bool center_lines = false;
  bool text = false;

  void add(CLI::App& app) {
    app.add_option("-o,--out", prefix, "Output prefix: writes PREFIX.yfc, PREFIX.png, PREFIX.json");
    app.add_option("--crop", crop, "Also write a random WxH crop to PREFIX_crop.png");
    app.add_flag("--center-lines", center_lines, "Also write helix center lines to PREFIX_centers.yfc");
    app.add_flag("--text", text, "Also write the curves in the text debug format to PREFIX.txt");
  }
};

std::pair<int, int> parse_size(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos) throw ValidationFailure("expected WxH, got '" + s + "'");
  try {
    return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
  } catch (const std::exception&) {
    throw ValidationFailure("expected WxH, got '" + s + "'");
  }
}

json issues_json(const yarn::ValidityReport& r) {
  json out = json::array();
  for (const yarn::Issue& i : r.issues)
    out.push_back({{"field", i.field}, {"value", i.value}, {"message", i.message}});
  return out;
}

json write_outputs(const yarn::Annotation& annotation, const OutputFlags& out) {
  const yarn::YarnSample sample = yarn::render_sample(annotation);
  const std::string base = out.prefix;
  yarn::write_curves(base + ".yfc", sample.curves);
  yarn::write_png(base + ".png", sample.image);
  yarn::write_annotation(base + ".json", sample.annotation);

  json files = {{"curves", base + ".yfc"}, {"image", base + ".png"}, {"annotation", base + ".json"}};
  if (!out.crop.empty()) {
    const auto [w, h] = parse_size(out.crop);
    yarn::RngStream rng = yarn::RngStream::derive(annotation.seed, yarn::stream::kCrop);
    yarn::write_png(base + "_crop.png", yarn::random_crop(sample.image, w, h, rng));
    files["crop"] = base + "_crop.png";
  }
  if (out.center_lines) {
    const auto built = yarn::build_curves(annotation.params, annotation.seed, sample.annotation.gen, true);
    yarn::write_curves(base + "_centers.yfc", built.center_lines);
    files["center_lines"] = base + "_centers.yfc";
  }
  if (out.text) {
    std::ofstream txt(base + ".txt");
    if (!txt) throw yarn::IoError("cannot open " + base + ".txt");
    yarn::write_curves_text(txt, sample.curves);
    files["text"] = base + ".txt";
  }

  std::size_t raw = 0;
  for (const yarn::Strip& s : sample.curves.strips)
    if (s.level != yarn::kHairTag && s.level != yarn::kLoopTag) ++raw;
  return {{"seed", annotation.seed},
          {"files", files},
          {"strips", sample.curves.size()},
          {"raw_strips", raw},
          {"flyaways",
           {{"hair", sample.flyaways.hair},
            {"loops", sample.flyaways.loops},
            {"skipped", sample.flyaways.skipped}}}};
}

void print_summary(const json& summary, bool as_json) {
  if (as_json) {
    std::cout << summary.dump(2) << "\n";
    return;
  }
  for (const auto& [key, value] : summary.items()) std::cout << key << ": " << value.dump() << "\n";
}

// ---------------------------------------------------------------- generate

struct GenerateCmd {
  std::optional<std::uint64_t> seed;
  std::string params_file;
  int levels = 3;
  bool force = false;
  bool as_json = false;
  ImageFlags image;
  OutputFlags out;
  std::map<std::string, double> values;
  std::map<std::string, CLI::Option*> options;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("generate", "Generate one yarn sample");
    cmd->add_option("--seed", seed, "Random seed");
    cmd->add_option("--params", params_file,
                    "JSON file with parameters (e.g. an annotation); overrides flags");
    cmd->add_option("--levels", levels, "Hierarchy levels including the fiber line (>= 3)")
        ->check(CLI::Range(3, 8));
    cmd->add_flag("--force", force, "Generate even if parameters fail validation");
    cmd->add_flag("--json", as_json, "Machine-readable summary");
    image.add(*cmd);
    out.add(*cmd);
    for (std::string_view key : yarn::kParameterKeys) {
      const std::string k(key);
      options[k] = cmd->add_option(flag_name(key), values[k], "Parameter " + k)->group("Model parameters");
    }
    options["alpha_f"] = cmd->add_option("--alpha-f", values["alpha_f"], "Fiber vertex spacing")
                             ->group("Model parameters");
    cmd->callback([this] { run(); });
  }

  void run() {
    const yarn::GenerationSettings gen = image.settings();
    json file;
    if (!params_file.empty()) file = yarn::read_json(params_file);
    if (!seed && file.is_object() && file.contains("seed") && file["seed"].is_number_integer())
      seed = file["seed"].get<std::uint64_t>();
    if (!seed) throw ValidationFailure("a seed is required (--seed or a 'seed' key in --params)");

    yarn::Annotation a = yarn::sample_annotation(*seed, gen);
    bool overridden = false;
    for (const auto& [key, opt] : options) {
      if (opt->count() == 0) continue;
      yarn::set_parameter(a.params, key, values[key]);
      overridden = true;
    }
    if (file.is_object()) {
      if (!file.contains("aux")) a.params.aux.reset();
      yarn::apply_overrides(a.params, a.gen, file);
      a.gen = yarn::resolved(a.gen);
    } else if (overridden) {
      a.params.aux.reset();
    }
    if (file.is_object() && file.contains("id")) a.id = file["id"].get<std::string>();

    const auto base_levels = yarn::level_specs(yarn::YarnParams{a.params.raw, {}, {}, {}});
    if (levels > 3 && a.params.extra_levels.empty()) {
      std::vector<yarn::LevelSpec> stack = base_levels;
      for (int l = 3; l < levels; ++l) {
        a.params.extra_levels.push_back(yarn::derive_outer_level(stack));
        stack.push_back(a.params.extra_levels.back());
      }
    }

    const yarn::ValidityReport report = yarn::validate(a.params);
    if (!report.ok() && !force) {
      std::cerr << "parameter validation failed:\n" << report.summary();
      throw ValidationFailure("invalid parameters (use --force to generate anyway)");
    }
    json summary = write_outputs(a, out);
    summary["valid"] = report.ok();
    summary["issues"] = issues_json(report);
    print_summary(summary, as_json);
  }
};

// ---------------------------------------------------------------- edit

struct EditCmd {
  std::string base;
  std::vector<std::string> scales;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  bool as_json = false;
  OutputFlags out;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("edit", "Regenerate a sample from an annotation with edits");
    cmd->add_option("base", base, "Base annotation JSON")->required();
    cmd->add_option("--scale", scales, "Multiply a parameter: KEY=FACTOR (repeatable)");
    cmd->add_option("--set", sets, "Set a parameter: KEY=VALUE (repeatable)");
    cmd->add_option("--seed", seed, "Seed for the regenerated sample (default: the base seed)");
    cmd->add_flag("--json", as_json, "Machine-readable summary");
    out.add(*cmd);
    cmd->callback([this] { run(); });
  }

  static std::pair<std::string, double> split(const std::string& s) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ValidationFailure("expected KEY=NUMBER, got '" + s + "'");
    try {
      return {s.substr(0, eq), std::stod(s.substr(eq + 1))};
    } catch (const std::exception&) {
      throw ValidationFailure("expected KEY=NUMBER, got '" + s + "'");
    }
  }

  void run() {
    yarn::Annotation a = yarn::read_annotation(base);
    const yarn::YarnParams before = a.params;
    try {
      for (const std::string& s : scales) {
        const auto [key, factor] = split(s);
        yarn::set_parameter(a.params, key, yarn::get_parameter(a.params, key) * factor);
      }
      for (const std::string& s : sets) {
        const auto [key, value] = split(s);
        yarn::set_parameter(a.params, key, value);
      }
    } catch (const yarn::InvalidParameter& e) {
      throw ValidationFailure(e.what());
    }
    if (!(a.params.raw == before.raw)) a.params.aux.reset();
    if (seed) a.seed = *seed;

    // Edits may leave the database range on purpose: warn only.
    const yarn::ValidityReport report = yarn::validate(a.params);
    if (!report.ok()) std::cerr << "warning: edited parameters leave the sampled ranges:\n" << report.summary();
    json summary = write_outputs(a, out);
    summary["valid"] = report.ok();
    summary["issues"] = issues_json(report);
    print_summary(summary, as_json);
  }
};

// ---------------------------------------------------------------- dataset

struct DatasetCmd {
  std::string dir;
  int count = 0;
  std::uint64_t seed = 0;
  int val = 0;
  int threads = 1;
  bool curves = false;
  bool full_scale = false;
  bool verify = false;
  std::string crop;
  bool as_json = false;
  ImageFlags image;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("dataset", "Generate an annotated image dataset");
    cmd->add_option("-o,--out", dir, "Output directory")->required();
    cmd->add_option("--count", count, "Number of samples")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", seed, "Base seed; sample i uses seed + i")->required();
    cmd->add_option("--val", val, "Number of trailing samples in the validation split");
    cmd->add_option("-j,--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--curves", curves, "Also write YFC1 curve files");
    cmd->add_flag("--full-scale", full_scale, "4000 train + 345 val samples at 2000x600");
    cmd->add_flag("--verify", verify, "Regenerate every sample afterwards and compare");
    cmd->add_option("--crop", crop, "Training crop size WxH recorded in dataset.json");
    cmd->add_flag("--json", as_json, "Machine-readable summary");
    image.add(*cmd);
    cmd->callback([this] { run(); });
  }

  void run() {
    yarn::DatasetConfig cfg;
    if (full_scale) {
      cfg = yarn::full_scale_config(dir, seed);
    } else {
      cfg.count = count;
      cfg.val_count = val;
      cfg.base_seed = seed;
      cfg.gen = image.settings();
      cfg.out_dir = dir;
    }
    cfg.threads = threads;
    cfg.write_curves = curves;
    if (!crop.empty()) std::tie(cfg.crop_width, cfg.crop_height) = parse_size(crop);
    if (cfg.val_count < 0 || cfg.val_count > cfg.count)
      throw ValidationFailure("--val must lie in [0, count]");

    const yarn::DatasetResult result = yarn::generate_dataset(cfg);
    json summary = {{"dir", dir},
                    {"samples", result.rows.size()},
                    {"manifest", (fs::path(dir) / "manifest.jsonl").string()},
                    {"metadata", result.metadata}};
    if (verify) {
      const yarn::VerifyReport v = yarn::verify_dataset(dir);
      summary["verified"] = v.checked;
      summary["mismatches"] = v.mismatches;
      if (!v.ok()) {
        print_summary(summary, as_json);
        throw yarn::IoError("dataset does not regenerate identically");
      }
    }
    print_summary(summary, as_json);
  }
};

struct VerifyCmd {
  std::string dir;
  bool as_json = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("verify", "Regenerate a dataset from its manifest and compare");
    cmd->add_option("dir", dir, "Dataset directory")->required();
    cmd->add_flag("--json", as_json, "Machine-readable summary");
    cmd->callback([this] { run(); });
  }

  void run() {
    const yarn::VerifyReport v = yarn::verify_dataset(dir);
    print_summary({{"verified", v.checked}, {"mismatches", v.mismatches}, {"ok", v.ok()}}, as_json);
    if (!v.ok()) throw yarn::IoError("dataset does not regenerate identically");
  }
};

// ---------------------------------------------------------------- inspect

struct InspectCmd {
  std::string file;
  bool as_json = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("inspect", "Summarize a YFC1 curve file");
    cmd->add_option("file", file, "Curve file")->required();
    cmd->add_flag("--json", as_json, "Machine-readable summary");
    cmd->callback([this] { run(); });
  }

  void run() {
    const yarn::PolyLineSet curves = yarn::read_curves(file);
    std::map<std::uint32_t, std::size_t> per_level;
    std::size_t vertices = 0;
    double len_min = 0.0, len_max = 0.0, len_sum = 0.0;
    yarn::Vec3 lo = yarn::Vec3::Zero(), hi = yarn::Vec3::Zero();
    double max_radius = 0.0;
    bool first = true;
    for (const yarn::Strip& s : curves.strips) {
      ++per_level[s.level];
      vertices += s.vertices.size();
      const double len = yarn::arc_length(s.vertices);
      len_min = first ? len : std::min(len_min, len);
      len_max = first ? len : std::max(len_max, len);
      len_sum += len;
      for (const yarn::Vec3& v : s.vertices) {
        if (first) {
          lo = hi = v;
          first = false;
        }
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
        if (s.level != yarn::kHairTag && s.level != yarn::kLoopTag)
          max_radius = std::max(max_radius, std::hypot(v.x(), v.y()));
      }
      first = false;
    }
    json levels = json::object();
    for (const auto& [level, n] : per_level) levels[std::to_string(level)] = n;
    const double mean = curves.empty() ? 0.0 : len_sum / static_cast<double>(curves.size());
    print_summary({{"strips", curves.size()},
                   {"vertices", vertices},
                   {"strips_per_level", levels},
                   {"length", {{"min", len_min}, {"mean", mean}, {"max", len_max}}},
                   {"bbox", {{"min", {lo.x(), lo.y(), lo.z()}}, {"max", {hi.x(), hi.y(), hi.z()}}}},
                   {"max_radius", max_radius}},
                  as_json);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Procedural yarn generator"};
  app.require_subcommand(1);
  GenerateCmd generate;
  EditCmd edit;
  DatasetCmd dataset;
  VerifyCmd verify;
  InspectCmd inspect;
  generate.add(app);
  edit.add(app);
  dataset.add(app);
  verify.add(app);
  inspect.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  } catch (const ValidationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const yarn::InvalidParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const yarn::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const yarn::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
