#pragma once

#include <optional>
#include <vector>

#include "yarn/curve_core.hpp"
#include "yarn/flyaway.hpp"

namespace yarn {

/// Raw yarn (no flyaways) parameters of the three-level fiber/ply/yarn model.
struct RawYarnParams {
  int fiber_count = 100;         // m, fibers per ply
  double fiber_rx = 0.012;       // t_x
  double fiber_ry = 0.008;       // t_y
  double fiber_pitch = -2.0;     // alpha, negative by convention
  int ply_count = 3;             // n
  double ply_rx = 0.3;           // r_x
  double ply_ry = 0.25;          // r_y
  double ply_pitch = 5.0;        // alpha_ply
  double ply_radius = 0.4;       // R_ply, radius of the yarn helix
  double jitter_z = 0.0;         // j_z
  double migration = 0.0;        // j
  double jitter_xy = 0.0;        // j_xy
  double vertex_spacing = 0.0;   // alpha_f; <= 0 selects default_vertex_spacing

  friend bool operator==(const RawYarnParams&, const RawYarnParams&) = default;
};

/// Auxiliary draws the sampler derives the raw parameters from.
struct AuxSample {
  double r_frac = 0.0;
  double area_frac_ply = 0.0;
  double area_frac_yarn = 0.0;
  double gamma = 0.0;      // fiber helix angle in a ply, radians
  double gamma_ply = 0.0;  // ply helix angle in the yarn, radians

  friend bool operator==(const AuxSample&, const AuxSample&) = default;
};

struct YarnParams {
  RawYarnParams raw;
  FlyawayParams fly;
  std::optional<AuxSample> aux;
  /// Additional outer levels (yarns twisted into thicker yarns).
  std::vector<LevelSpec> extra_levels;

  friend bool operator==(const YarnParams&, const YarnParams&) = default;
};

inline constexpr int kDefaultHelixResolution = 48;

/// Fiber vertex spacing giving at least 16 vertices per turn of the tighter
/// of the two twists, clamped to [0.005, 0.1].
double default_vertex_spacing(const RawYarnParams& raw);

double effective_vertex_spacing(const RawYarnParams& raw);

/// Fiber level (m fibers on a disc of radius r_x) and ply level (n plies on
/// a circle of radius R_ply, ply cross-section squeezed by r_y/r_x), followed
/// by `extra_levels`.
std::vector<LevelSpec> level_specs(const YarnParams& params,
                                   int helix_resolution = kDefaultHelixResolution);

/// Outer level for a yarn-of-yarns: three strands on a circle just outside
/// the current yarn, twisted against the previous level at 65 degrees.
LevelSpec derive_outer_level(const std::vector<LevelSpec>& inner);

}  // namespace yarn
