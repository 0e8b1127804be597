#include "yarn/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace yarn {

double default_vertex_spacing(const RawYarnParams& raw) {
  const double tightest = std::min(std::abs(raw.fiber_pitch), std::abs(raw.ply_pitch));
  return std::clamp(tightest / 16.0, 0.005, 0.1);
}

double effective_vertex_spacing(const RawYarnParams& raw) {
  return raw.vertex_spacing > 0.0 ? raw.vertex_spacing : default_vertex_spacing(raw);
}

std::vector<LevelSpec> level_specs(const YarnParams& params, int helix_resolution) {
  const RawYarnParams& raw = params.raw;

  LevelSpec fibers;
  fibers.instance_count = raw.fiber_count;
  fibers.placement_radius = raw.ply_rx;
  fibers.jitter_xy = raw.jitter_xy;
  fibers.jitter_z = raw.jitter_z;
  fibers.pitch = raw.fiber_pitch;
  fibers.helix_resolution = helix_resolution;
  fibers.ellipse_scale = 1.0;
  fibers.migration = raw.migration;
  fibers.placement = Placement::Disc;

  LevelSpec plies;
  plies.instance_count = raw.ply_count;
  plies.placement_radius = raw.ply_radius;
  plies.pitch = raw.ply_pitch;
  plies.helix_resolution = helix_resolution;
  plies.ellipse_scale = raw.ply_rx > 0.0 ? std::clamp(raw.ply_ry / raw.ply_rx, 1e-6, 1.0) : 1.0;
  plies.placement = Placement::SmallCircle;

  std::vector<LevelSpec> specs{fibers, plies};
  specs.insert(specs.end(), params.extra_levels.begin(), params.extra_levels.end());
  return specs;
}

LevelSpec derive_outer_level(const std::vector<LevelSpec>& inner) {
  double outer = 0.0;
  for (const LevelSpec& l : inner) outer += l.placement_radius;
  const LevelSpec& prev = inner.back();

  LevelSpec next;
  next.instance_count = 3;
  next.placement = Placement::SmallCircle;
  next.placement_radius = outer / std::sin(std::numbers::pi / 3.0);
  const double sign = prev.pitch > 0.0 ? -1.0 : 1.0;
  next.pitch = sign * 2.0 * std::numbers::pi * next.placement_radius *
               std::tan(65.0 * std::numbers::pi / 180.0);
  next.helix_resolution = prev.helix_resolution;
  next.ellipse_scale = 0.9;
  return next;
}

}  // namespace yarn
