#pragma once

#include <stdexcept>
#include <vector>

#include "yarn/geometry.hpp"
#include "yarn/rng.hpp"

namespace yarn {

struct FlyawayParams {
  int count = 0;                  // g
  double loop_probability = 0.5;  // p
  double hair_angle = 0.0;        // beta, radians
  double hair_length = 1.0;       // l_hair
  double squeeze = 0.0;           // s
  double loop_length = 1.0;       // l_loop
  double loop_dist_mean = 1.0;    // d_mean
  double loop_dist_std = 0.0;     // d_std

  friend bool operator==(const FlyawayParams&, const FlyawayParams&) = default;
};

struct SegmentNotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultSegmentAttempts = 64;

/// Copy of a contiguous vertex chain of at least `target_length` arc length.
/// A start vertex is drawn uniformly over all strips and the chain is walked
/// in a uniformly drawn direction; chains that run out are rejected.
std::vector<Vec3> select_segment(const PolyLineSet& yarn, double target_length,
                                 RngStream& rng,
                                 int max_attempts = kDefaultSegmentAttempts);

/// Pushes the interior of a segment radially along half a sine period.
/// Draws the per-flyaway distance d = d_mean + d_std*R.
std::vector<Vec3> make_loop(std::vector<Vec3> segment, double d_mean, double d_std,
                            RngStream& rng);

/// Deterministic part of make_loop for a given distance.
std::vector<Vec3> offset_loop(std::vector<Vec3> segment, double distance);

/// Squeezes the segment in z by 1/(1+s) and tilts it outward by `angle`,
/// both about the lower endpoint. The result starts at that endpoint.
std::vector<Vec3> make_hair(std::vector<Vec3> segment, double angle, double squeeze);

struct FlyawayReport {
  int hair = 0;
  int loops = 0;
  int skipped = 0;
};

/// Appends `params.count` flyaway strips (minus skipped ones) sourced from
/// the strips already in `yarn`. Existing strips are left untouched.
FlyawayReport add_flyaways(PolyLineSet& yarn, const FlyawayParams& params,
                           RngStream& rng,
                           int max_attempts = kDefaultSegmentAttempts);

}  // namespace yarn
