#include "yarn/annotation.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "yarn/curve_io.hpp"
#include "yarn/raster.hpp"

namespace yarn {

using nlohmann::json;

namespace {

struct ParamAccess {
  std::string_view key;
  double (*get)(const YarnParams&);
  void (*set)(YarnParams&, double);
};

int to_int(double v) { return static_cast<int>(std::lround(v)); }

#define YARN_REAL(key, member)                                   \
  ParamAccess {                                                  \
    key, [](const YarnParams& p) { return p.member; },          \
        [](YarnParams& p, double v) { p.member = v; }            \
  }
#define YARN_INT(key, member)                                                      \
  ParamAccess {                                                                    \
    key, [](const YarnParams& p) { return static_cast<double>(p.member); },       \
        [](YarnParams& p, double v) { p.member = to_int(v); }                      \
  }

const std::array<ParamAccess, kParameterKeys.size()> kAccess = {
    YARN_INT("m", raw.fiber_count),
    YARN_REAL("t_x", raw.fiber_rx),
    YARN_REAL("t_y", raw.fiber_ry),
    YARN_REAL("alpha", raw.fiber_pitch),
    YARN_INT("n", raw.ply_count),
    YARN_REAL("r_x", raw.ply_rx),
    YARN_REAL("r_y", raw.ply_ry),
    YARN_REAL("alpha_ply", raw.ply_pitch),
    YARN_REAL("R_ply", raw.ply_radius),
    YARN_REAL("j_z", raw.jitter_z),
    YARN_REAL("j", raw.migration),
    YARN_REAL("j_xy", raw.jitter_xy),
    YARN_INT("g", fly.count),
    YARN_REAL("p", fly.loop_probability),
    YARN_REAL("beta", fly.hair_angle),
    YARN_REAL("l_hair", fly.hair_length),
    YARN_REAL("s", fly.squeeze),
    YARN_REAL("l_loop", fly.loop_length),
    YARN_REAL("d_mean", fly.loop_dist_mean),
    YARN_REAL("d_std", fly.loop_dist_std),
};

#undef YARN_REAL
#undef YARN_INT

const ParamAccess* find_access(std::string_view key) {
  for (const ParamAccess& a : kAccess)
    if (a.key == key) return &a;
  return nullptr;
}

double number(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing key '") + key + "'");
  if (!it->is_number()) throw FormatError(std::string("key '") + key + "' is not a number");
  return it->get<double>();
}

json aux_to_json(const AuxSample& a) {
  return {{"r_frac", a.r_frac},
          {"area_frac_ply", a.area_frac_ply},
          {"area_frac_yarn", a.area_frac_yarn},
          {"gamma", a.gamma},
          {"gamma_ply", a.gamma_ply}};
}

AuxSample aux_from_json(const json& j) {
  return {number(j, "r_frac"), number(j, "area_frac_ply"), number(j, "area_frac_yarn"),
          number(j, "gamma"), number(j, "gamma_ply")};
}

void apply_generation(GenerationSettings& gen, const json& j) {
  if (j.contains("total_length")) gen.total_length = number(j, "total_length");
  if (j.contains("helix_resolution")) gen.helix_resolution = to_int(number(j, "helix_resolution"));
  if (j.contains("width")) gen.width = to_int(number(j, "width"));
  if (j.contains("height")) gen.height = to_int(number(j, "height"));
  if (j.contains("scale")) gen.scale = number(j, "scale");
}

}  // namespace

GenerationSettings resolved(GenerationSettings gen) {
  if (!(gen.scale > 0.0)) gen.scale = default_scale(gen.height);
  if (!(gen.total_length > 0.0)) gen.total_length = gen.width / gen.scale;
  return gen;
}

double get_parameter(const YarnParams& params, std::string_view key) {
  if (const ParamAccess* a = find_access(key)) return a->get(params);
  if (key == "alpha_f") return params.raw.vertex_spacing;
  throw InvalidParameter("unknown parameter '" + std::string(key) + "'");
}

void set_parameter(YarnParams& params, std::string_view key, double value) {
  if (const ParamAccess* a = find_access(key)) return a->set(params, value);
  if (key == "alpha_f") {
    params.raw.vertex_spacing = value;
    return;
  }
  throw InvalidParameter("unknown parameter '" + std::string(key) + "'");
}

json level_to_json(const LevelSpec& l) {
  return {{"N", l.instance_count},
          {"r", l.placement_radius},
          {"j_xy", l.jitter_xy},
          {"j_z", l.jitter_z},
          {"pitch", l.pitch},
          {"H", l.helix_resolution},
          {"e", l.ellipse_scale},
          {"j", l.migration},
          {"placement", l.placement == Placement::SmallCircle ? "small-circle" : "disc"}};
}

LevelSpec level_from_json(const json& j) {
  LevelSpec l;
  l.instance_count = to_int(number(j, "N"));
  l.placement_radius = number(j, "r");
  l.jitter_xy = j.value("j_xy", 0.0);
  l.jitter_z = j.value("j_z", 0.0);
  l.pitch = number(j, "pitch");
  l.helix_resolution = to_int(j.value("H", static_cast<double>(kDefaultHelixResolution)));
  l.ellipse_scale = j.value("e", 1.0);
  l.migration = j.value("j", 0.0);
  const std::string placement = j.value("placement", std::string("small-circle"));
  if (placement == "small-circle") {
    l.placement = Placement::SmallCircle;
  } else if (placement == "disc") {
    l.placement = Placement::Disc;
  } else {
    throw FormatError("unknown placement '" + placement + "'");
  }
  return l;
}

json to_json(const Annotation& a) {
  json j;
  j["id"] = a.id;
  j["seed"] = a.seed;
  j["generator_version"] = a.generator_version;
  for (const ParamAccess& p : kAccess) {
    if (p.key == "m" || p.key == "n" || p.key == "g")
      j[std::string(p.key)] = to_int(p.get(a.params));
    else
      j[std::string(p.key)] = p.get(a.params);
  }
  j["alpha_f"] = a.params.raw.vertex_spacing;
  if (a.params.aux) j["aux"] = aux_to_json(*a.params.aux);
  if (!a.params.extra_levels.empty()) {
    json levels = json::array();
    for (const LevelSpec& l : a.params.extra_levels) levels.push_back(level_to_json(l));
    j["extra_levels"] = std::move(levels);
  }
  j["generation"] = {{"total_length", a.gen.total_length},
                     {"helix_resolution", a.gen.helix_resolution},
                     {"width", a.gen.width},
                     {"height", a.gen.height},
                     {"scale", a.gen.scale}};
  return j;
}

Annotation annotation_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("annotation must be a JSON object");
  Annotation a;
  for (const ParamAccess& p : kAccess) p.set(a.params, number(j, std::string(p.key).c_str()));
  const auto seed = j.find("seed");
  if (seed == j.end() || !seed->is_number_integer()) throw FormatError("missing integer key 'seed'");
  a.seed = seed->get<std::uint64_t>();
  a.id = j.value("id", std::string());
  a.generator_version = j.value("generator_version", std::string(kGeneratorVersion));
  a.params.raw.vertex_spacing = j.value("alpha_f", 0.0);
  if (j.contains("aux")) a.params.aux = aux_from_json(j.at("aux"));
  if (j.contains("extra_levels"))
    for (const json& l : j.at("extra_levels")) a.params.extra_levels.push_back(level_from_json(l));
  if (j.contains("generation")) apply_generation(a.gen, j.at("generation"));
  return a;
}

void apply_overrides(YarnParams& params, GenerationSettings& gen, const json& j) {
  if (!j.is_object()) throw FormatError("parameter file must be a JSON object");
  for (const ParamAccess& p : kAccess) {
    const std::string key(p.key);
    if (j.contains(key)) p.set(params, number(j, key.c_str()));
  }
  if (j.contains("alpha_f")) params.raw.vertex_spacing = number(j, "alpha_f");
  if (j.contains("aux")) params.aux = aux_from_json(j.at("aux"));
  if (j.contains("extra_levels")) {
    params.extra_levels.clear();
    for (const json& l : j.at("extra_levels")) params.extra_levels.push_back(level_from_json(l));
  }
  if (j.contains("generation")) apply_generation(gen, j.at("generation"));
}

json read_json(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_annotation(const std::filesystem::path& path, const Annotation& a) {
  write_file(path, to_json(a).dump(2) + "\n");
}

Annotation read_annotation(const std::filesystem::path& path) {
  return annotation_from_json(read_json(path));
}

json to_json(const ManifestRow& row) {
  json j = {{"id", row.id},
            {"seed", row.seed},
            {"image_path", row.image_path},
            {"annotation_path", row.annotation_path},
            {"width", row.width},
            {"height", row.height}};
  if (!row.curve_path.empty()) j["curve_path"] = row.curve_path;
  if (!row.curve_hash.empty()) j["curve_hash"] = row.curve_hash;
  if (!row.split.empty()) j["split"] = row.split;
  return j;
}

ManifestRow manifest_row_from_json(const json& j) {
  try {
    ManifestRow row;
    row.id = j.at("id").get<std::string>();
    row.seed = j.at("seed").get<std::uint64_t>();
    row.image_path = j.at("image_path").get<std::string>();
    row.annotation_path = j.at("annotation_path").get<std::string>();
    row.width = j.at("width").get<int>();
    row.height = j.at("height").get<int>();
    row.curve_path = j.value("curve_path", std::string());
    row.curve_hash = j.value("curve_hash", std::string());
    row.split = j.value("split", std::string());
    return row;
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad manifest row: ") + e.what());
  }
}

void write_manifest(const std::filesystem::path& path, const std::vector<ManifestRow>& rows) {
  std::string text;
  for (const ManifestRow& r : rows) text += to_json(r).dump() + "\n";
  write_file(path, text);
}

std::vector<ManifestRow> read_manifest(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::vector<ManifestRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      rows.push_back(manifest_row_from_json(json::parse(line)));
    } catch (const json::parse_error& e) {
      throw FormatError(path.string() + ": " + e.what());
    }
  }
  return rows;
}

}  // namespace yarn
