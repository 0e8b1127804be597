#pragma once

#include <cstdint>
#include <string>

#include "yarn/annotation.hpp"
#include "yarn/flyaway.hpp"
#include "yarn/geometry.hpp"
#include "yarn/raster.hpp"

namespace yarn {

/// Random substreams of one sample. Parameters, raw geometry and flyaways
/// draw from independent streams so a stored annotation rebuilds the same
/// curves without replaying the parameter sampler.
namespace stream {
inline constexpr std::string_view kParams = "params";
inline constexpr std::string_view kGeometry = "geometry";
inline constexpr std::string_view kFlyaways = "flyaways";
inline constexpr std::string_view kCrop = "crop";
}  // namespace stream

struct BuiltCurves {
  PolyLineSet curves;        // raw fibers followed by flyaways
  PolyLineSet center_lines;  // filled only when requested
  FlyawayReport flyaways;
};

BuiltCurves build_curves(const YarnParams& params, std::uint64_t seed,
                         const GenerationSettings& gen, bool with_center_lines = false);

/// Annotation with parameters drawn by the guided sampler for `seed`.
Annotation sample_annotation(std::uint64_t seed, const GenerationSettings& gen,
                             std::string id = {});

struct YarnSample {
  Annotation annotation;
  PolyLineSet curves;
  GrayImage image;
  FlyawayReport flyaways;
};

/// Builds curves and rasterizes them at the annotation's image settings.
YarnSample render_sample(const Annotation& annotation);

/// 64-bit FNV-1a, used for content hashes in the manifest.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

}  // namespace yarn
