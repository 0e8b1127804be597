#include "yarn/curve_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

namespace yarn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGoldenishTurn = 0.137;

Vec3 normalized_or_throw(const Vec3& v, const char* what) {
  const double n = v.norm();
  if (!(n > 1e-300)) throw InvalidParameter(what);
  return v / n;
}

// Per-vertex tangents of a helix polyline, central differences inside and
// one-sided differences at the ends.
std::vector<Vec3> vertex_tangents(const std::vector<Vec3>& v) {
  const std::size_t n = v.size();
  std::vector<Vec3> t(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3& a = v[k == 0 ? 0 : k - 1];
    const Vec3& b = v[k + 1 == n ? n - 1 : k + 1];
    t[k] = normalized_or_throw(b - a, "degenerate helix tangent");
  }
  return t;
}

class FrameField {
 public:
  explicit FrameField(const Helix& helix)
      : helix_(helix), tangents_(vertex_tangents(helix.vertices)) {}

  Frame at(double u) const {
    const auto& v = helix_.vertices;
    const auto last = static_cast<std::ptrdiff_t>(v.size()) - 2;
    const auto k = std::clamp(static_cast<std::ptrdiff_t>(std::floor(u)),
                              std::ptrdiff_t{0}, last);
    const double t = u - static_cast<double>(k);
    const double tc = std::clamp(t, 0.0, 1.0);

    Frame f;
    f.origin = v[k] + t * (v[k + 1] - v[k]);
    f.tangent = normalized_or_throw(
        (1.0 - tc) * tangents_[k] + tc * tangents_[k + 1],
        "degenerate helix tangent");
    Vec3 n = Vec3::UnitX() - Vec3::UnitX().dot(f.tangent) * f.tangent;
    if (n.norm() < 1e-6) n = Vec3::UnitY() - Vec3::UnitY().dot(f.tangent) * f.tangent;
    f.normal = n.normalized();
    f.binormal = f.tangent.cross(f.normal);
    return f;
  }

  double z_step() const { return helix_.z_step; }

 private:
  const Helix& helix_;
  std::vector<Vec3> tangents_;
};

PolyLineSet map_with(const PolyLineSet& templ, const FrameField& field) {
  PolyLineSet out;
  out.strips.reserve(templ.size());
  for (const Strip& s : templ.strips) {
    Strip mapped{s.level, {}};
    mapped.vertices.reserve(s.vertices.size());
    for (const Vec3& v : s.vertices) {
      const Frame f = field.at(v.z() / field.z_step());
      mapped.vertices.push_back(f.origin + v.x() * f.normal + v.y() * f.binormal);
    }
    out.strips.push_back(std::move(mapped));
  }
  return out;
}

// Keeps the contiguous run between the first and last vertex inside
// [lo, hi]. Strips that would drop below two vertices are left alone.
void trim_z(PolyLineSet& set, double lo, double hi) {
  for (Strip& s : set.strips) {
    auto inside = [&](const Vec3& v) { return v.z() >= lo && v.z() <= hi; };
    auto first = std::find_if(s.vertices.begin(), s.vertices.end(), inside);
    auto last = std::find_if(s.vertices.rbegin(), s.vertices.rend(), inside);
    if (first == s.vertices.end()) continue;
    const auto b = first - s.vertices.begin();
    const auto e = s.vertices.rend() - last;  // one past the last inside vertex
    if (e - b < 2) continue;
    s.vertices = std::vector<Vec3>(s.vertices.begin() + b, s.vertices.begin() + e);
  }
}

double axial_margin(const std::vector<LevelSpec>& levels, double spacing) {
  double m = spacing;
  for (const LevelSpec& l : levels) {
    m += l.placement_radius * (1.0 + 4.0 * l.migration) +
         4.0 * std::sqrt(2.0) * l.jitter_xy + 4.0 * l.jitter_z;
  }
  return 1.5 * m;
}

struct LevelOutput {
  PolyLineSet curves;
  PolyLineSet centers;
};

LevelOutput build_level(const std::vector<LevelSpec>& levels, std::size_t level,
                        double length, double spacing, bool with_centers,
                        RngStream& rng) {
  if (level == 0) return {build_level_zero(length, spacing), {}};

  const LevelOutput inner =
      build_level(levels, level - 1, length, spacing, with_centers, rng);
  const LevelSpec& spec = levels[level - 1];
  const std::vector<Vec2> positions = place_instances(spec, rng);
  const double turns = std::ceil(length / std::abs(spec.pitch));

  LevelOutput out;
  out.curves.strips.reserve(inner.curves.size() * positions.size());
  for (const Vec2& p : positions) {
    const Helix helix = build_helix(p, spec, turns, rng);
    const FrameField field(helix);
    out.curves.append(map_with(
        apply_ellipse_and_rotate(inner.curves, spec.ellipse_scale, p), field));
    if (with_centers) {
      out.centers.append(map_with(
          apply_ellipse_and_rotate(inner.centers, spec.ellipse_scale, p), field));
      out.centers.strips.push_back(helix.as_strip(static_cast<std::uint32_t>(level)));
    }
  }
  return out;
}

}  // namespace

void LevelSpec::check() const {
  if (instance_count < 1) throw InvalidParameter("instance count must be >= 1");
  if (helix_resolution < 3) throw InvalidParameter("helix resolution must be >= 3");
  if (!(placement_radius >= 0.0)) throw InvalidParameter("placement radius must be >= 0");
  if (!(ellipse_scale > 0.0 && ellipse_scale <= 1.0))
    throw InvalidParameter("ellipse scale must lie in (0, 1]");
  if (!(pitch != 0.0) || !std::isfinite(pitch)) throw InvalidParameter("pitch must be non-zero");
  if (!(jitter_xy >= 0.0) || !(jitter_z >= 0.0) || !(migration >= 0.0))
    throw InvalidParameter("jitter and migration must be >= 0");
}

PolyLineSet build_level_zero(double total_length, double spacing) {
  if (!(total_length > 0.0) || !(spacing > 0.0))
    throw InvalidParameter("level zero needs positive length and spacing");
  const auto count =
      static_cast<std::size_t>(std::floor(total_length / spacing + 1e-9)) + 1;
  Strip s{0, {}};
  s.vertices.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    s.vertices.emplace_back(0.0, 0.0, static_cast<double>(i) * spacing);
  return PolyLineSet{{std::move(s)}};
}

std::vector<Vec2> place_instances_small(int count, double radius,
                                        double jitter_xy, RngStream& rng) {
  if (count < 1) throw InvalidParameter("instance count must be >= 1");
  std::vector<Vec2> points;
  points.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double theta = kTwoPi * i / count;
    const double jitter = jitter_xy * rng.normal();
    points.emplace_back(radius * std::sin(theta) + jitter,
                        radius * std::cos(theta) + jitter);
  }
  return points;
}

std::vector<Vec2> place_instances_large(int count, double radius,
                                        double jitter_xy, RngStream& rng) {
  if (count < 1) throw InvalidParameter("instance count must be >= 1");
  std::vector<Vec2> points;
  points.reserve(count);
  for (int i = 1; i <= count; ++i) {
    const double r = radius * std::pow(static_cast<double>(i) / count, 0.3);
    const double theta = kTwoPi * kGoldenishTurn * i;
    const double jitter = jitter_xy * rng.normal();
    points.emplace_back(r * std::sin(theta) + jitter, r * std::cos(theta) + jitter);
  }
  return points;
}

std::vector<Vec2> place_instances(const LevelSpec& spec, RngStream& rng) {
  return spec.placement == Placement::SmallCircle
             ? place_instances_small(spec.instance_count, spec.placement_radius,
                                     spec.jitter_xy, rng)
             : place_instances_large(spec.instance_count, spec.placement_radius,
                                     spec.jitter_xy, rng);
}

double migration_scale(double i, int resolution, double amplitude, double offset,
                       double frequency) {
  return 1.0 + std::max(0.0, amplitude) *
                   std::cos(2.0 * offset + i / resolution * kTwoPi * frequency);
}

Helix build_helix(const Vec2& p, const LevelSpec& spec, double turns,
                  RngStream& rng) {
  spec.check();
  if (!(turns > 0.0)) throw InvalidParameter("helix needs a positive number of turns");

  const int res = spec.helix_resolution;
  const double radius = p.norm();
  const double theta0 = std::atan2(p.x(), p.y());
  const double sign = spec.pitch < 0.0 ? -1.0 : 1.0;

  MigrationDraws m;
  m.amplitude = spec.migration * rng.normal();
  m.offset = rng.normal();
  m.frequency = rng.normal();

  const auto last = static_cast<std::size_t>(std::ceil(turns * res - 1e-9));
  Helix h;
  h.z_step = std::abs(spec.pitch) / res;
  h.vertices.reserve(last + 1);
  for (std::size_t k = 0; k <= last; ++k) {
    const double i = sign * static_cast<double>(k);
    const double theta = i / res * kTwoPi + theta0;
    const double s = migration_scale(i, res, m.amplitude, m.offset, m.frequency);
    const double z = i / res * spec.pitch + spec.jitter_z * rng.normal();
    h.vertices.emplace_back(radius * s * std::sin(theta),
                            radius * s * std::cos(theta), z);
  }
  return h;
}

PolyLineSet apply_ellipse_and_rotate(PolyLineSet templ, double ellipse_scale,
                                     const Vec2& p) {
  if (!(ellipse_scale > 0.0 && ellipse_scale <= 1.0))
    throw InvalidParameter("ellipse scale must lie in (0, 1]");
  const double phi = p.norm() > 0.0 ? std::atan2(p.y(), p.x()) : 0.0;
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  for (Strip& strip : templ.strips) {
    for (Vec3& v : strip.vertices) {
      const double x = ellipse_scale * v.x();
      const double y = v.y();
      v.x() = c * x - s * y;
      v.y() = s * x + c * y;
    }
  }
  return templ;
}

Frame helix_frame(const Helix& helix, double u) {
  if (helix.vertices.size() < 2) throw InvalidParameter("helix needs >= 2 vertices");
  return FrameField(helix).at(u);
}

PolyLineSet map_to_helix(const PolyLineSet& templ, const Helix& helix) {
  if (helix.vertices.size() < 2) throw InvalidParameter("helix needs >= 2 vertices");
  if (!(helix.z_step > 0.0)) throw InvalidParameter("helix z step must be positive");
  return map_with(templ, FrameField(helix));
}

RawYarn build_raw_yarn_with_centers(const std::vector<LevelSpec>& levels,
                                    double total_length, double vertex_spacing,
                                    RngStream& rng) {
  if (levels.empty()) throw InvalidParameter("at least one level is required");
  if (!(total_length > 0.0) || !(vertex_spacing > 0.0))
    throw InvalidParameter("length and vertex spacing must be positive");
  for (const LevelSpec& l : levels) l.check();

  // Build on a longer axis so the tilted strip ends fall outside [0, L].
  const double margin = axial_margin(levels, vertex_spacing);
  LevelOutput built = build_level(levels, levels.size(), total_length + 2.0 * margin,
                                  vertex_spacing, true, rng);
  RawYarn yarn{std::move(built.curves), std::move(built.centers)};
  for (PolyLineSet* set : {&yarn.fibers, &yarn.center_lines}) {
    set->translate(Vec3(0.0, 0.0, -margin));
    trim_z(*set, 0.0, total_length);
  }
  return yarn;
}

PolyLineSet build_raw_yarn(const std::vector<LevelSpec>& levels,
                           double total_length, double vertex_spacing,
                           RngStream& rng) {
  if (levels.empty()) throw InvalidParameter("at least one level is required");
  if (!(total_length > 0.0) || !(vertex_spacing > 0.0))
    throw InvalidParameter("length and vertex spacing must be positive");
  for (const LevelSpec& l : levels) l.check();

  const double margin = axial_margin(levels, vertex_spacing);
  PolyLineSet fibers = build_level(levels, levels.size(), total_length + 2.0 * margin,
                                   vertex_spacing, false, rng)
                           .curves;
  fibers.translate(Vec3(0.0, 0.0, -margin));
  trim_z(fibers, 0.0, total_length);
  return fibers;
}

}  // namespace yarn
