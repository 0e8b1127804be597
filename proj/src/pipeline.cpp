#include "yarn/pipeline.hpp"

#include <cstdio>

#include "yarn/curve_core.hpp"
#include "yarn/sampler.hpp"

namespace yarn {

BuiltCurves build_curves(const YarnParams& params, std::uint64_t seed,
                         const GenerationSettings& gen, bool with_center_lines) {
  const GenerationSettings g = resolved(gen);
  const std::vector<LevelSpec> levels = level_specs(params, g.helix_resolution);
  const double spacing = effective_vertex_spacing(params.raw);

  BuiltCurves out;
  RngStream geometry = RngStream::derive(seed, stream::kGeometry);
  if (with_center_lines) {
    RawYarn raw = build_raw_yarn_with_centers(levels, g.total_length, spacing, geometry);
    out.curves = std::move(raw.fibers);
    out.center_lines = std::move(raw.center_lines);
  } else {
    out.curves = build_raw_yarn(levels, g.total_length, spacing, geometry);
  }
  RngStream fly = RngStream::derive(seed, stream::kFlyaways);
  out.flyaways = add_flyaways(out.curves, params.fly, fly);
  return out;
}

Annotation sample_annotation(std::uint64_t seed, const GenerationSettings& gen, std::string id) {
  RngStream rng = RngStream::derive(seed, stream::kParams);
  Annotation a;
  a.id = std::move(id);
  a.seed = seed;
  a.params = sample_yarn(rng);
  a.gen = resolved(gen);
  return a;
}

YarnSample render_sample(const Annotation& annotation) {
  const GenerationSettings g = resolved(annotation.gen);
  BuiltCurves built = build_curves(annotation.params, annotation.seed, g);

  RasterOptions opt;
  opt.width = g.width;
  opt.height = g.height;
  opt.scale = g.scale;
  opt.fiber_radius = annotation.params.raw.fiber_rx;
  opt.z_center = 0.5 * g.total_length;

  YarnSample s;
  s.annotation = annotation;
  s.annotation.gen = g;
  s.image = rasterize(built.curves, opt);
  s.curves = std::move(built.curves);
  s.flyaways = built.flyaways;
  return s;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace yarn
