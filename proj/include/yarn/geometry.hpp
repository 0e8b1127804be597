#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "yarn/errors.hpp"

namespace yarn {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

/// Level tags for strips that are not part of the twisted hierarchy.
inline constexpr std::uint32_t kHairTag = 254;
inline constexpr std::uint32_t kLoopTag = 255;

/// One polygonal line. `level` records where the strip came from: 0 for
/// fibers, the hierarchy level for center lines, kHairTag/kLoopTag for
/// flyaways.
struct Strip {
  std::uint32_t level = 0;
  std::vector<Vec3> vertices;

  friend bool operator==(const Strip&, const Strip&) = default;
};

/// Ordered vertex strips describing fibers, plies or yarns. Units are model
/// units (millimeter scale); the yarn axis is the global z-axis.
struct PolyLineSet {
  std::vector<Strip> strips;

  std::size_t size() const { return strips.size(); }
  bool empty() const { return strips.empty(); }
  std::size_t vertex_count() const;

  void append(const PolyLineSet& other);
  void translate(const Vec3& offset);

  friend bool operator==(const PolyLineSet&, const PolyLineSet&) = default;
};

/// Sum of edge lengths of a vertex chain.
double arc_length(const std::vector<Vec3>& vertices);

}  // namespace yarn
