#pragma once

#include <vector>

#include "yarn/geometry.hpp"
#include "yarn/rng.hpp"

namespace yarn {

enum class Placement {
  SmallCircle,  // regular pattern on a circle, for a handful of instances
  Disc,         // spiral-like fill of the whole disc, for many instances
};

/// Twist geometry of one hierarchy level.
struct LevelSpec {
  int instance_count = 1;         // N
  double placement_radius = 0.0;  // r
  double jitter_xy = 0.0;
  double jitter_z = 0.0;
  double pitch = 1.0;           // height per turn; the sign selects handedness
  int helix_resolution = 48;    // vertices per turn
  double ellipse_scale = 1.0;   // x-scale of the template, in (0, 1]
  double migration = 0.0;       // scales the per-helix migration amplitude draw
  Placement placement = Placement::Disc;

  /// Throws InvalidParameter when an invariant is broken.
  void check() const;

  friend bool operator==(const LevelSpec&, const LevelSpec&) = default;
};

/// Straight polygonal line along +z with vertex spacing `spacing`.
PolyLineSet build_level_zero(double total_length, double spacing);

std::vector<Vec2> place_instances_small(int count, double radius,
                                        double jitter_xy, RngStream& rng);

/// Disc placement with radius r*(i/N)^0.3 and angle 2*pi*0.137*i for
/// i = 1..N, so the last sample sits on the rim and the center is never hit.
std::vector<Vec2> place_instances_large(int count, double radius,
                                        double jitter_xy, RngStream& rng);

std::vector<Vec2> place_instances(const LevelSpec& spec, RngStream& rng);

/// Radial modulation of a helix at signed vertex index i. `amplitude` is the
/// already-scaled per-helix amplitude draw; non-positive values disable it.
double migration_scale(double i, int resolution, double amplitude,
                       double offset, double frequency);

/// Per-helix random draws, taken once when a helix is created.
struct MigrationDraws {
  double amplitude = 0.0;
  double offset = 0.0;
  double frequency = 0.0;
};

/// A helix center line plus its nominal parametrization: vertex k sits at
/// nominal height k*z_step above the helix start.
struct Helix {
  std::vector<Vec3> vertices;
  double z_step = 1.0;

  Strip as_strip(std::uint32_t level) const { return {level, vertices}; }
};

/// Helix around the z-axis through `p`. Vertex 0 coincides with p when
/// jitter and migration are off. For negative pitch the winding direction
/// flips while z still increases with the vertex index.
Helix build_helix(const Vec2& p, const LevelSpec& spec, double turns,
                  RngStream& rng);

/// Scales x by `ellipse_scale`, then rotates about z so the scaled (minor)
/// axis lies along the radial line through `p`.
PolyLineSet apply_ellipse_and_rotate(PolyLineSet templ, double ellipse_scale,
                                     const Vec2& p);

/// Moving frame of a helix at a (fractional) vertex parameter.
struct Frame {
  Vec3 origin;
  Vec3 tangent;
  Vec3 normal;
  Vec3 binormal;
};

Frame helix_frame(const Helix& helix, double u);

/// Expresses every template vertex (x, y, z) in the helix frame at height z:
/// origin + x*normal + y*binormal.
PolyLineSet map_to_helix(const PolyLineSet& templ, const Helix& helix);

struct RawYarn {
  PolyLineSet fibers;
  /// Helix center lines of every level, carried through the outer levels.
  PolyLineSet center_lines;
};

/// Recursive hierarchical twisting. `levels` runs from the innermost level
/// (fibers into a ply) outward; any depth is accepted.
PolyLineSet build_raw_yarn(const std::vector<LevelSpec>& levels,
                           double total_length, double vertex_spacing,
                           RngStream& rng);

RawYarn build_raw_yarn_with_centers(const std::vector<LevelSpec>& levels,
                                    double total_length, double vertex_spacing,
                                    RngStream& rng);

}  // namespace yarn
