#pragma once

#include <string>
#include <vector>

#include "yarn/params.hpp"
#include "yarn/rng.hpp"

namespace yarn {

struct Interval {
  double lo;
  double hi;
  bool contains(double v, double tol = 0.0) const { return v >= lo - tol && v <= hi + tol; }
};

/// Value intervals of the learnable parameters in the synthetic database.
/// The fiber radii follow the sampling procedure (t_y in [0.006, 0.01]) and
/// t_x is bounded by the thicker-fiber range [0.006, 0.02].
namespace label_range {
inline constexpr Interval m{20, 200};
inline constexpr Interval t_x{0.006, 0.02};
inline constexpr Interval t_y{0.006, 0.01};
inline constexpr Interval alpha{-25.778, -0.476};
inline constexpr Interval n{2, 6};
inline constexpr Interval r_x{0.029, 0.789};
inline constexpr Interval r_y{0.042, 0.830};
inline constexpr Interval alpha_ply{0.639, 31.655};
inline constexpr Interval R_ply{0.053, 1.486};
inline constexpr Interval j{0.0, 0.3};
inline constexpr Interval j_xy{0.0, 0.03};
inline constexpr Interval g{30, 300};
inline constexpr Interval p{0.35, 0.65};
inline constexpr Interval beta{0.050, 1.571};
inline constexpr Interval l_hair{0.222, 14.5};
inline constexpr Interval s{0.0, 1.0};
inline constexpr Interval l_loop{0.407, 34.627};
inline constexpr Interval d_mean{0.394, 30.469};
inline constexpr Interval d_std{0.007, 5.0};
}  // namespace label_range

/// Sampling intervals of the auxiliary variables.
namespace aux_range {
inline constexpr Interval t_y{0.006, 0.01};
inline constexpr Interval m{40, 200};
inline constexpr Interval area_frac_ply{0.035, 0.215};
inline constexpr Interval area_frac_yarn{0.55, 0.82};
inline constexpr Interval helix_angle_deg{50.0, 80.0};
Interval r_frac(int ply_count);
}  // namespace aux_range

/// One candidate from the guided sampling procedure, before it is checked
/// against the label intervals.
RawYarnParams draw_raw_candidate(RngStream& rng, AuxSample& aux);

/// Guided raw-yarn sample. Candidates outside the label intervals are
/// redrawn, so every result lies inside them.
RawYarnParams sample_raw_yarn(RngStream& rng, AuxSample* aux = nullptr);

FlyawayParams sample_flyaway(RngStream& rng);

/// Raw yarn, then flyaway parameters, from one stream.
YarnParams sample_yarn(RngStream& rng);

struct Issue {
  std::string field;
  double value;
  std::string message;
};

struct ValidityReport {
  std::vector<Issue> issues;
  double gamma = 0.0;      // recomputed from alpha and r_x
  double gamma_ply = 0.0;  // recomputed from alpha_ply and R_ply

  bool ok() const { return issues.empty(); }
  std::string summary() const;
};

/// fiber helix angle: arctan(-alpha / (2 pi r_x))
double fiber_helix_angle(const RawYarnParams& raw);
/// ply helix angle: arctan(alpha_ply / (2 pi R_ply))
double ply_helix_angle(const RawYarnParams& raw);

ValidityReport validate(const YarnParams& params);
ValidityReport validate(const RawYarnParams& raw, const FlyawayParams& fly);

}  // namespace yarn
