#include "yarn/flyaway.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

namespace yarn {

namespace {

// Uniform vertex picking over a fixed set of source strips.
class SegmentPicker {
 public:
  explicit SegmentPicker(const std::vector<Strip>& strips, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      if (strips[i].vertices.empty()) continue;
      sources_.push_back(&strips[i]);
      total_ += strips[i].vertices.size();
      ends_.push_back(total_);
    }
  }

  std::vector<Vec3> pick(double target, RngStream& rng, int max_attempts) const {
    if (total_ == 0) throw SegmentNotFound("no source strips for flyaways");
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
      const auto flat = static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(total_) - 1));
      const bool forward = rng.uniform() < 0.5;
      const auto it = std::upper_bound(ends_.begin(), ends_.end(), flat);
      const auto s = static_cast<std::size_t>(it - ends_.begin());
      const std::vector<Vec3>& v = sources_[s]->vertices;
      const std::size_t start = flat - (s == 0 ? 0 : ends_[s - 1]);

      double len = 0.0;
      std::size_t k = start;
      while (len < target) {
        if (forward ? k + 1 >= v.size() : k == 0) break;
        const std::size_t next = forward ? k + 1 : k - 1;
        len += (v[next] - v[k]).norm();
        k = next;
      }
      if (len < target) continue;
      const std::size_t lo = std::min(start, k);
      const std::size_t hi = std::max(start, k);
      return {v.begin() + static_cast<std::ptrdiff_t>(lo),
              v.begin() + static_cast<std::ptrdiff_t>(hi) + 1};
    }
    throw SegmentNotFound("no fiber segment of the requested length");
  }

 private:
  std::vector<const Strip*> sources_;
  std::vector<std::size_t> ends_;
  std::size_t total_ = 0;
};

double positive_length(double mean, double spread, RngStream& rng) {
  for (int i = 0; i < 1000; ++i) {
    const double len = mean + spread * rng.normal();
    if (len > 0.0) return len;
  }
  return -1.0;
}

}  // namespace

std::vector<Vec3> select_segment(const PolyLineSet& yarn, double target_length,
                                 RngStream& rng, int max_attempts) {
  if (yarn.empty()) throw InvalidParameter("segment selection needs a non-empty yarn");
  if (!(target_length > 0.0)) throw InvalidParameter("segment length must be positive");
  return SegmentPicker(yarn.strips, yarn.size()).pick(target_length, rng, max_attempts);
}

std::vector<Vec3> offset_loop(std::vector<Vec3> segment, double distance) {
  if (segment.size() < 3) return segment;
  const double j = static_cast<double>(segment.size() - 1);
  for (std::size_t i = 1; i + 1 < segment.size(); ++i) {
    Vec3& v = segment[i];
    const double w = distance * std::sin(static_cast<double>(i) * std::numbers::pi / j);
    v.x() += w * v.x();
    v.y() += w * v.y();
  }
  return segment;
}

std::vector<Vec3> make_loop(std::vector<Vec3> segment, double d_mean, double d_std,
                            RngStream& rng) {
  const double d = d_mean + d_std * rng.normal();
  return offset_loop(std::move(segment), d);
}

std::vector<Vec3> make_hair(std::vector<Vec3> segment, double angle, double squeeze) {
  if (segment.size() < 2) throw InvalidParameter("hair needs >= 2 vertices");
  if (segment.back().z() < segment.front().z())
    std::reverse(segment.begin(), segment.end());

  const Vec3 pivot = segment.front();
  Vec3 radial(pivot.x(), pivot.y(), 0.0);
  radial = radial.norm() > 1e-12 ? radial.normalized() : Vec3::UnitX();
  const Vec3 axis = Vec3::UnitZ().cross(radial);
  const Eigen::Matrix3d rot = Eigen::AngleAxisd(angle, axis).toRotationMatrix();
  const double zscale = 1.0 / (1.0 + squeeze);

  for (std::size_t i = 1; i < segment.size(); ++i) {
    Vec3 d = segment[i] - pivot;
    d.z() *= zscale;
    segment[i] = pivot + rot * d;
  }
  return segment;
}

FlyawayReport add_flyaways(PolyLineSet& yarn, const FlyawayParams& params,
                           RngStream& rng, int max_attempts) {
  if (params.count < 0) throw InvalidParameter("flyaway count must be >= 0");
  FlyawayReport report;
  if (params.count == 0) return report;
  if (yarn.empty()) throw InvalidParameter("flyaways need a non-empty yarn");

  // Flyaways are sourced from the strips present on entry only. The reserve
  // keeps the picker's strip pointers valid while flyaways are appended.
  const std::size_t sources = yarn.size();
  yarn.strips.reserve(sources + static_cast<std::size_t>(params.count));
  const SegmentPicker picker(yarn.strips, sources);

  for (int k = 0; k < params.count; ++k) {
    const bool loop = rng.uniform() < params.loop_probability;
    const double length = loop ? positive_length(params.loop_length, 0.01, rng)
                               : positive_length(params.hair_length, 0.05, rng);
    if (length <= 0.0) {
      ++report.skipped;
      continue;
    }
    std::vector<Vec3> segment;
    try {
      segment = picker.pick(length, rng, max_attempts);
    } catch (const SegmentNotFound&) {
      ++report.skipped;
      continue;
    }
    if (loop) {
      yarn.strips.push_back(
          {kLoopTag, make_loop(std::move(segment), params.loop_dist_mean,
                               params.loop_dist_std, rng)});
      ++report.loops;
    } else {
      yarn.strips.push_back(
          {kHairTag, make_hair(std::move(segment), params.hair_angle, params.squeeze)});
      ++report.hair;
    }
  }
  return report;
}

}  // namespace yarn
