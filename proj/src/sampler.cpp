#include "yarn/sampler.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace yarn {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;
constexpr double kAngleTol = 1e-9;

bool inside_labels(const RawYarnParams& r) {
  namespace lr = label_range;
  return lr::t_x.contains(r.fiber_rx) && lr::t_y.contains(r.fiber_ry) &&
         lr::m.contains(r.fiber_count) && lr::n.contains(r.ply_count) &&
         lr::r_x.contains(r.ply_rx) && lr::r_y.contains(r.ply_ry) &&
         lr::alpha.contains(r.fiber_pitch) && lr::alpha_ply.contains(r.ply_pitch) &&
         lr::R_ply.contains(r.ply_radius);
}

class Checker {
 public:
  explicit Checker(ValidityReport& report) : report_(report) {}

  void range(const char* field, double v, Interval iv, double tol = 0.0) {
    if (!std::isfinite(v) || !iv.contains(v, tol)) {
      std::ostringstream msg;
      msg << "outside [" << iv.lo << ", " << iv.hi << "]";
      report_.issues.push_back({field, v, msg.str()});
    }
  }

  void require(bool cond, const char* field, double v, const char* message) {
    if (!cond) report_.issues.push_back({field, v, message});
  }

 private:
  ValidityReport& report_;
};

}  // namespace

Interval aux_range::r_frac(int ply_count) {
  if (ply_count <= 2) return {0.67, 0.9};
  if (ply_count == 3) return {0.72, 0.91};
  return {0.85, 0.95};
}

RawYarnParams draw_raw_candidate(RngStream& rng, AuxSample& aux) {
  RawYarnParams r;
  r.fiber_ry = rng.uniform(aux_range::t_y.lo, aux_range::t_y.hi);
  r.fiber_rx = rng.uniform(r.fiber_ry, 2.5 * r.fiber_ry);
  r.ply_count = static_cast<int>(rng.uniform_int(2, 6));
  r.fiber_count = static_cast<int>(rng.uniform_int(40, 200));

  const Interval rf = aux_range::r_frac(r.ply_count);
  aux.r_frac = rng.uniform(rf.lo, rf.hi);
  aux.area_frac_ply = rng.uniform(aux_range::area_frac_ply.lo, aux_range::area_frac_ply.hi);
  aux.area_frac_yarn = rng.uniform(aux_range::area_frac_yarn.lo, aux_range::area_frac_yarn.hi);
  aux.gamma = rng.uniform(aux_range::helix_angle_deg.lo, aux_range::helix_angle_deg.hi) * kDeg;
  aux.gamma_ply = rng.uniform(aux_range::helix_angle_deg.lo, aux_range::helix_angle_deg.hi) * kDeg;

  r.ply_rx = std::sqrt(r.fiber_count * r.fiber_rx * r.fiber_ry /
                       (aux.area_frac_ply * aux.r_frac));
  r.ply_ry = aux.r_frac * r.ply_rx;

  const double slanted = r.ply_rx / std::sin(aux.gamma_ply);
  r.ply_radius = std::sqrt(r.ply_count * aux.r_frac * slanted * slanted / aux.area_frac_yarn) -
                 aux.r_frac * slanted;
  r.ply_pitch = 2.0 * kPi * r.ply_radius * std::tan(aux.gamma_ply);
  r.fiber_pitch = -2.0 * kPi * r.ply_rx * std::tan(aux.gamma);
  return r;
}

RawYarnParams sample_raw_yarn(RngStream& rng, AuxSample* aux_out) {
  constexpr int kMaxCandidates = 10000;
  for (int i = 0; i < kMaxCandidates; ++i) {
    AuxSample aux;
    RawYarnParams r = draw_raw_candidate(rng, aux);
    if (!inside_labels(r)) continue;
    r.migration = rng.uniform(label_range::j.lo, label_range::j.hi);
    r.jitter_xy = rng.uniform(label_range::j_xy.lo, label_range::j_xy.hi);
    r.jitter_z = 0.0;
    r.vertex_spacing = default_vertex_spacing(r);
    if (aux_out) *aux_out = aux;
    return r;
  }
  throw std::runtime_error("raw yarn sampler found no candidate inside the label intervals");
}

FlyawayParams sample_flyaway(RngStream& rng) {
  namespace lr = label_range;
  FlyawayParams f;
  f.count = static_cast<int>(rng.uniform_int(static_cast<std::int64_t>(lr::g.lo),
                                             static_cast<std::int64_t>(lr::g.hi)));
  f.loop_probability = rng.uniform(lr::p.lo, lr::p.hi);
  f.hair_angle = rng.uniform(lr::beta.lo, lr::beta.hi);
  f.hair_length = rng.uniform(lr::l_hair.lo, lr::l_hair.hi);
  f.squeeze = rng.uniform(lr::s.lo, lr::s.hi);
  f.loop_length = rng.uniform(lr::l_loop.lo, lr::l_loop.hi);
  f.loop_dist_mean = rng.uniform(lr::d_mean.lo, lr::d_mean.hi);
  f.loop_dist_std = rng.uniform(lr::d_std.lo, lr::d_std.hi);
  return f;
}

YarnParams sample_yarn(RngStream& rng) {
  YarnParams p;
  AuxSample aux;
  p.raw = sample_raw_yarn(rng, &aux);
  p.aux = aux;
  p.fly = sample_flyaway(rng);
  return p;
}

double fiber_helix_angle(const RawYarnParams& raw) {
  return std::atan(-raw.fiber_pitch / (2.0 * kPi * raw.ply_rx));
}

double ply_helix_angle(const RawYarnParams& raw) {
  return std::atan(raw.ply_pitch / (2.0 * kPi * raw.ply_radius));
}

ValidityReport validate(const RawYarnParams& r, const FlyawayParams& f) {
  namespace lr = label_range;
  ValidityReport report;
  Checker c(report);

  c.require(r.fiber_pitch < 0.0, "alpha", r.fiber_pitch, "fiber pitch must be negative");
  c.require(r.ply_pitch > 0.0, "alpha_ply", r.ply_pitch, "ply pitch must be positive");
  c.require(r.fiber_ry > 0.0 && r.fiber_rx >= r.fiber_ry, "t_x", r.fiber_rx,
            "fiber radii need t_x >= t_y > 0");
  c.require(r.ply_ry > 0.0 && r.ply_ry <= r.ply_rx, "r_y", r.ply_ry,
            "ply radii need r_x >= r_y > 0");
  c.require(r.jitter_z >= 0.0, "j_z", r.jitter_z, "must be >= 0");
  c.require(r.vertex_spacing >= 0.0, "alpha_f", r.vertex_spacing, "must be >= 0");

  c.range("m", r.fiber_count, lr::m);
  c.range("t_x", r.fiber_rx, lr::t_x);
  c.range("t_y", r.fiber_ry, lr::t_y);
  c.range("alpha", r.fiber_pitch, lr::alpha);
  c.range("n", r.ply_count, lr::n);
  c.range("r_x", r.ply_rx, lr::r_x);
  c.range("r_y", r.ply_ry, lr::r_y);
  c.range("alpha_ply", r.ply_pitch, lr::alpha_ply);
  c.range("R_ply", r.ply_radius, lr::R_ply);
  c.range("j", r.migration, lr::j);
  c.range("j_xy", r.jitter_xy, lr::j_xy);

  c.range("g", f.count, lr::g);
  c.range("p", f.loop_probability, lr::p);
  c.range("beta", f.hair_angle, lr::beta);
  c.range("l_hair", f.hair_length, lr::l_hair);
  c.range("s", f.squeeze, lr::s);
  c.range("l_loop", f.loop_length, lr::l_loop);
  c.range("d_mean", f.loop_dist_mean, lr::d_mean);
  c.range("d_std", f.loop_dist_std, lr::d_std);

  const Interval angles{aux_range::helix_angle_deg.lo * kDeg,
                        aux_range::helix_angle_deg.hi * kDeg};
  report.gamma = fiber_helix_angle(r);
  report.gamma_ply = ply_helix_angle(r);
  c.range("gamma", report.gamma, angles, kAngleTol);
  c.range("gamma_ply", report.gamma_ply, angles, kAngleTol);
  return report;
}

ValidityReport validate(const YarnParams& params) {
  ValidityReport report = validate(params.raw, params.fly);
  for (const LevelSpec& l : params.extra_levels) {
    try {
      l.check();
    } catch (const InvalidParameter& e) {
      report.issues.push_back({"extra_levels", 0.0, e.what()});
    }
  }
  return report;
}

std::string ValidityReport::summary() const {
  std::ostringstream out;
  for (const Issue& i : issues) out << i.field << "=" << i.value << ": " << i.message << "\n";
  return out.str();
}

}  // namespace yarn
