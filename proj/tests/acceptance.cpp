// Acceptance run: one PASS/FAIL line per criterion.
//
// usage: acceptance <path-to-yarngen> [work-dir]

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "support.hpp"
#include "yarn/annotation.hpp"
#include "yarn/curve_core.hpp"
#include "yarn/curve_io.hpp"
#include "yarn/dataset.hpp"
#include "yarn/flyaway.hpp"
#include "yarn/pipeline.hpp"
#include "yarn/sampler.hpp"

using namespace yarn;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_cli;
fs::path g_work;

// Collects failed checks of one criterion.
class Check {
 public:
  void operator()(bool ok, const std::string& what) {
    ++total_;
    if (!ok && failures_.size() < 10) failures_.push_back(what);
    failed_ += !ok;
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool ok() const { return failed_ == 0; }
  int total() const { return total_; }
  int failed() const { return failed_; }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  int total_ = 0;
  int failed_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string fmt(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

int run(const std::string& args) {
  const std::string cmd =
      "\"" + g_cli + "\" " + args + " > /dev/null 2>> \"" + (g_work / "cli_stderr.log").string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

LevelSpec level(int n, double r, double pitch, Placement placement) {
  LevelSpec s;
  s.instance_count = n;
  s.placement_radius = r;
  s.pitch = pitch;
  s.placement = placement;
  return s;
}

PolyLineSet sampled_raw_yarn(std::uint64_t seed, double length) {
  GenerationSettings gen;
  gen.total_length = length;
  gen.width = 500;
  gen.height = 150;
  const Annotation a = sample_annotation(seed, gen);
  RngStream rng = RngStream::derive(seed, stream::kGeometry);
  return build_raw_yarn(level_specs(a.params), length, effective_vertex_spacing(a.params.raw), rng);
}

// ---------------------------------------------------------------- geometry

void geometry_suite(Check& check) {
  RngStream rng(101);

  // Helix coincidence with jitter and migration off.
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const bool disc = t % 2 == 0;
    const LevelSpec spec = level(static_cast<int>(rng.uniform_int(1, disc ? 300 : 7)),
                                 rng.uniform(0.0, 2.0), rng.uniform(0.2, 30.0) * (t % 3 ? 1 : -1),
                                 disc ? Placement::Disc : Placement::SmallCircle);
    for (const Vec2& p : place_instances(spec, rng)) {
      const Helix h = build_helix(p, spec, 1.0, rng);
      worst = std::max(worst, (h.vertices[0] - Vec3(p.x(), p.y(), 0.0)).norm());
    }
  }
  check(worst <= 1e-9, "helix coincidence error " + fmt(worst));
  check.note("coincidence max error " + fmt(worst));

  // Pitch exactness with j_z = 0, either handedness, migration on.
  worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    LevelSpec spec = level(1, 0.0, rng.uniform(0.1, 40.0) * (t % 2 ? 1 : -1), Placement::SmallCircle);
    spec.migration = rng.uniform(0.0, 0.3);
    spec.helix_resolution = static_cast<int>(rng.uniform_int(3, 96));
    const Helix h = build_helix(Vec2(rng.normal(), rng.normal()), spec, 5.0, rng);
    for (int k = 1; k <= 5; ++k) {
      const double dz = h.vertices[static_cast<std::size_t>(k * spec.helix_resolution)].z() - h.vertices[0].z();
      worst = std::max(worst, std::abs(dz - k * std::abs(spec.pitch)) / (k * std::abs(spec.pitch)));
    }
  }
  check(worst <= 1e-9, "pitch relative error " + fmt(worst));
  check.note("pitch max relative error " + fmt(worst));

  // Radial law of the disc placement.
  worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int n = static_cast<int>(rng.uniform_int(1, 500));
    const double r = rng.uniform(0.01, 3.0);
    const auto pts = place_instances_large(n, r, 0.0, rng);
    for (int i = 1; i <= n; ++i) {
      const double expected = r * std::pow(static_cast<double>(i) / n, 0.3);
      worst = std::max(worst, std::abs(pts[static_cast<std::size_t>(i - 1)].norm() - expected) / expected);
    }
  }
  check(worst <= 1e-12, "radial law relative error " + fmt(worst));
  check.note("radial law max relative error " + fmt(worst));

  // Strip-count product law for 1 to 4 levels.
  int product_failures = 0;
  for (int t = 0; t < 40; ++t) {
    const int depth = 1 + t % 4;
    std::vector<LevelSpec> levels;
    std::size_t expected = 1;
    double r = 0.05;
    for (int l = 0; l < depth; ++l) {
      LevelSpec s = level(static_cast<int>(rng.uniform_int(1, l == 0 ? 12 : 4)), r,
                          (l % 2 ? 1.0 : -1.0) * rng.uniform(1.0, 4.0),
                          l == 0 ? Placement::Disc : Placement::SmallCircle);
      s.jitter_xy = rng.uniform(0.0, 0.01);
      s.migration = rng.uniform(0.0, 0.3);
      s.ellipse_scale = rng.uniform(0.6, 1.0);
      levels.push_back(s);
      expected *= static_cast<std::size_t>(s.instance_count);
      r *= 2.5;
    }
    const PolyLineSet y = build_raw_yarn(levels, 3.0, 0.05, rng);
    product_failures += y.size() != expected;
  }
  check(product_failures == 0, std::to_string(product_failures) + " stacks broke the product law");

  // Loop endpoints stay on the source fibers; hair keeps its lowest vertex.
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    PolyLineSet y = sampled_raw_yarn(seed, 12.0);
    const PolyLineSet before = y;
    FlyawayParams p;
    p.count = 150;
    p.loop_probability = 0.5;
    p.loop_length = 2.0;
    p.hair_length = 1.5;
    p.loop_dist_mean = 1.0;
    p.loop_dist_std = 0.3;
    p.hair_angle = 1.0;
    p.squeeze = 0.5;
    RngStream fly(seed);
    const FlyawayReport r = add_flyaways(y, p, fly);
    double loop_err = 0.0, hair_err = 0.0;
    for (std::size_t i = before.size(); i < y.size(); ++i) {
      const Strip& s = y.strips[i];
      if (s.level == kLoopTag) {
        loop_err = std::max(loop_err, yarn::test::distance_to_vertices(s.vertices.front(), before));
        loop_err = std::max(loop_err, yarn::test::distance_to_vertices(s.vertices.back(), before));
      } else {
        hair_err = std::max(hair_err, yarn::test::distance_to_vertices(s.vertices.front(), before));
      }
    }
    check(r.loops > 0 && r.hair > 0, "flyaway mix present");
    check(loop_err <= 1e-9, "loop endpoint error " + fmt(loop_err));
    check(hair_err <= 1e-9, "hair base error " + fmt(hair_err));
    for (std::size_t i = 0; i < before.size(); ++i)
      check(y.strips[i] == before.strips[i], "original strip modified");
  }
  int hair_moved = 0;
  const PolyLineSet src = sampled_raw_yarn(4, 8.0);
  for (int t = 0; t < 2000; ++t) {
    std::vector<Vec3> seg = select_segment(src, rng.uniform(0.2, 3.0), rng);
    if (t % 2) std::reverse(seg.begin(), seg.end());
    const Vec3 lowest = seg.front().z() < seg.back().z() ? seg.front() : seg.back();
    const auto hair = make_hair(seg, rng.uniform(0.0, 1.6), rng.uniform(0.0, 1.0));
    hair_moved += !(hair.front() == lowest);
  }
  check(hair_moved == 0, std::to_string(hair_moved) + " hair moved their lowest vertex");
}

// ---------------------------------------------------------------- sampler

void sampler_suite(Check& check) {
  RngStream rng = RngStream::derive(2024, stream::kParams);
  const double deg = std::numbers::pi / 180.0;
  double worst_density = 0.0;
  double gamma_lo = INFINITY, gamma_hi = -INFINITY;
  int invalid = 0, signs = 0;
  for (int i = 0; i < 10000; ++i) {
    const YarnParams p = sample_yarn(rng);
    const ValidityReport v = validate(p);
    if (!v.ok()) {
      ++invalid;
      check(false, "sample " + std::to_string(i) + ": " + v.summary());
    }
    signs += !(p.raw.fiber_pitch < 0.0 && p.raw.ply_pitch > 0.0);
    const RawYarnParams& r = p.raw;
    const double density = r.fiber_count * r.fiber_rx * r.fiber_ry / (r.ply_rx * r.ply_rx * p.aux->r_frac);
    worst_density = std::max(worst_density, std::abs(density - p.aux->area_frac_ply) / p.aux->area_frac_ply);
    gamma_lo = std::min({gamma_lo, v.gamma, v.gamma_ply});
    gamma_hi = std::max({gamma_hi, v.gamma, v.gamma_ply});
  }
  check(signs == 0, std::to_string(signs) + " samples with wrong pitch signs");
  check(worst_density <= 1e-12, "density identity relative error " + fmt(worst_density));
  check(gamma_lo >= 50.0 * deg - 1e-9 && gamma_hi <= 80.0 * deg + 1e-9, "helix angle range");
  check.note("invalid samples " + std::to_string(invalid) + " of 10000");
  check.note("helix angles [" + fmt(gamma_lo / deg) + ", " + fmt(gamma_hi / deg) + "] deg");
  check.note("density identity max relative error " + fmt(worst_density));
}

// ---------------------------------------------------------------- statistics

void statistical_suite(Check& check) {
  const PolyLineSet base = sampled_raw_yarn(7, 10.0);
  for (double p_l : {0.35, 0.5, 0.65}) {
    PolyLineSet y = base;
    FlyawayParams p;
    p.count = 10000;
    p.loop_probability = p_l;
    p.loop_length = 0.5;
    p.hair_length = 0.5;
    RngStream rng(static_cast<std::uint64_t>(p_l * 1000));
    const FlyawayReport r = add_flyaways(y, p, rng);
    const double n = r.loops + r.hair;
    const double sigma = std::sqrt(n * p_l * (1.0 - p_l));
    check(r.skipped == 0, "skipped flyaways");
    check(std::abs(r.loops - n * p_l) <= 3.0 * sigma,
          "loop count " + std::to_string(r.loops) + " vs " + fmt(n * p_l) + " +- " + fmt(3 * sigma));
    check.note("p_l=" + fmt(p_l) + ": loops " + std::to_string(r.loops) + ", expected " + fmt(n * p_l) +
               " +- " + fmt(3.0 * sigma));
  }

  RngStream rng(8);
  const auto pts = place_instances_large(400, 1.0, 0.0, rng);
  double worst = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double d = std::atan2(pts[i].x(), pts[i].y()) - std::atan2(pts[i - 1].x(), pts[i - 1].y());
    worst = std::max(worst, std::abs(std::remainder(d - 2.0 * std::numbers::pi * 0.137, 2.0 * std::numbers::pi)));
  }
  check(worst <= 1e-12, "angular increment error " + fmt(worst));
  check.note("angular increment max error " + fmt(worst) + " rad");

  PolyLineSet strip = build_level_zero(999.0, 1.0);
  std::vector<long> bins(20, 0);
  for (int i = 0; i < 10000; ++i) {
    const auto seg = select_segment(strip, 0.5, rng);
    ++bins[std::min<std::size_t>(static_cast<std::size_t>(std::lround(seg.front().z())) / 50, 19)];
  }
  const double pv = yarn::test::chi_square_uniform_p(bins);
  check(pv > 0.01, "segment start chi-square p = " + fmt(pv));
  check.note("segment start chi-square p = " + fmt(pv));
}

// ---------------------------------------------------------------- reproducibility

void reproducibility_suite(Check& check) {
  const fs::path dir = g_work / "repro";
  fs::create_directories(dir);
  for (std::uint64_t seed : {7u, 1234567u}) {
    const std::string s = std::to_string(seed);
    const std::string a = (dir / ("a" + s)).string(), b = (dir / ("b" + s)).string();
    check(run("generate --seed " + s + " -o \"" + a + "\"") == 0, "generate a exit code");
    check(run("generate --seed " + s + " -o \"" + b + "\"") == 0, "generate b exit code");
    for (const char* ext : {".yfc", ".png", ".json"}) {
      const std::string fa = read_file(a + ext), fb = read_file(b + ext);
      check(!fa.empty() && fa == fb, std::string("seed ") + s + ": " + ext + " differs");
    }
  }

  const fs::path ds = dir / "dataset";
  fs::remove_all(ds);
  check(run("dataset -o \"" + ds.string() + "\" --count 64 --seed 5000 --width 500 --height 150 --curves") == 0,
        "dataset exit code");
  const auto rows = read_manifest(ds / "manifest.jsonl");
  check(rows.size() == 64, "manifest rows " + std::to_string(rows.size()));
  check(run("verify \"" + ds.string() + "\"") == 0, "CLI verify");
  const VerifyReport v = verify_dataset(ds);
  check(v.checked == 64 && v.ok(), "in-process verify: " + std::to_string(v.mismatches.size()) + " mismatches");
  check.note("dataset rows " + std::to_string(rows.size()) + ", regenerated " + std::to_string(v.checked) +
             ", mismatches " + std::to_string(v.mismatches.size()));
}

// ---------------------------------------------------------------- edits

// Linear interpolation of a z-monotone strip at height z.
Vec3 at_height(const std::vector<Vec3>& v, double z) {
  auto it = std::lower_bound(v.begin(), v.end(), z, [](const Vec3& a, double h) { return a.z() < h; });
  if (it == v.begin()) return v.front();
  if (it == v.end()) return v.back();
  const Vec3& b = *it;
  const Vec3& a = *(it - 1);
  return a + (z - a.z()) / (b.z() - a.z()) * (b - a);
}

struct Wraps {
  double fiber = 0.0;  // mean over sampled fibers, about their ply center
  double ply = 0.0;    // mean over plies, about the yarn axis
};

Wraps count_wraps(const PolyLineSet& centers, double z0, double fiber_window, double ply_window) {
  Wraps w;
  int plies = 0, fibers = 0;
  std::size_t group_start = 0;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (centers.strips[i].level != 2) continue;
    const auto& ply = centers.strips[i].vertices;
    std::vector<Vec2> xy;
    for (const Vec3& v : ply)
      if (v.z() >= z0 && v.z() <= z0 + ply_window) xy.push_back(v.head<2>());
    w.ply += std::abs(yarn::test::winding_turns(xy));
    ++plies;
    // A few fiber helix centers of this ply.
    for (std::size_t f = group_start; f < i && f < group_start + 5; ++f) {
      std::vector<Vec2> rel;
      for (const Vec3& v : centers.strips[f].vertices)
        if (v.z() >= z0 && v.z() <= z0 + fiber_window) rel.push_back((v - at_height(ply, v.z())).head<2>());
      w.fiber += std::abs(yarn::test::winding_turns(rel));
      ++fibers;
    }
    group_start = i + 1;
  }
  if (plies) w.ply /= plies;
  if (fibers) w.fiber /= fibers;
  return w;
}

std::size_t flyaway_strips(const PolyLineSet& c) {
  std::size_t n = 0;
  for (const Strip& s : c.strips) n += s.level == kHairTag || s.level == kLoopTag;
  return n;
}

void edit_suite(Check& check) {
  const fs::path dir = g_work / "edit";
  fs::create_directories(dir);
  for (std::uint64_t seed : {5u, 8u, 12u, 15u, 30u}) {
    const std::string s = std::to_string(seed);
    const fs::path base = dir / ("base" + s);
    check(run("generate --seed " + s + " --width 500 --height 150 -o \"" + base.string() + "\"") == 0,
          "generate exit code");
    nlohmann::json j = read_json(base.string() + ".json");
    const double alpha = std::abs(j["alpha"].get<double>());
    const double alpha_ply = j["alpha_ply"].get<double>();
    // Long enough for ten turns of either twist after a one-unit lead-in.
    const double z0 = 1.0;
    j["generation"]["total_length"] = z0 + 10.0 * std::max(alpha, alpha_ply) + 1.0;
    const fs::path long_base = dir / ("long" + s + ".json");
    write_file(long_base, j.dump(2));

    auto edit = [&](const std::string& name, const std::string& edits) {
      const fs::path out = dir / (name + s);
      check(run("edit \"" + long_base.string() + "\" " + edits + " --center-lines -o \"" + out.string() + "\"") == 0,
            "edit " + name + " exit code");
      return out.string();
    };
    const std::string ident = edit("ident", "");
    const std::string half = edit("half", "--scale alpha=0.5 --scale alpha_ply=0.5");
    const std::string dbl_g = edit("g2", "--scale g=2");
    const std::string dbl_gh = edit("g2h", "--scale g=2 --scale l_hair=2");

    const Wraps w0 = count_wraps(read_curves(ident + "_centers.yfc"), z0, 10.0 * alpha, 10.0 * alpha_ply);
    const Wraps w1 = count_wraps(read_curves(half + "_centers.yfc"), z0, 10.0 * alpha, 10.0 * alpha_ply);
    check(std::abs(w0.ply - 10.0) <= 1.0, "seed " + s + ": base ply wraps " + fmt(w0.ply));
    check(std::abs(w0.fiber - 10.0) <= 1.0, "seed " + s + ": base fiber wraps " + fmt(w0.fiber));
    check(std::abs(w1.ply - 2.0 * w0.ply) <= 1.0, "seed " + s + ": edited ply wraps " + fmt(w1.ply));
    check(std::abs(w1.fiber - 2.0 * w0.fiber) <= 1.0, "seed " + s + ": edited fiber wraps " + fmt(w1.fiber));
    check.note("seed " + s + ": wraps over 10 turns ply " + fmt(w0.ply) + " -> " + fmt(w1.ply) + ", fiber " +
               fmt(w0.fiber) + " -> " + fmt(w1.fiber));

    // Identity edit reproduces the base geometry at the same seed.
    const Annotation a = read_annotation(long_base);
    check(read_curves(ident + ".yfc") == render_sample(a).curves, "seed " + s + ": identity edit changed curves");

    const std::size_t g0 = flyaway_strips(read_curves(ident + ".yfc"));
    const std::size_t g2 = flyaway_strips(read_curves(dbl_g + ".yfc"));
    const std::size_t g2h = flyaway_strips(read_curves(dbl_gh + ".yfc"));
    const auto g_param = static_cast<std::size_t>(j["g"].get<int>());
    check(g0 == g_param, "seed " + s + ": base flyaways " + std::to_string(g0) + " vs g " + std::to_string(g_param));
    check(g2 == 2 * g0, "seed " + s + ": doubled g gave " + std::to_string(g2) + " flyaways");
    check(g2h == 2 * g0, "seed " + s + ": doubled g and l_hair gave " + std::to_string(g2h) + " flyaways");
    check.note("seed " + s + ": flyaways " + std::to_string(g0) + " -> " + std::to_string(g2) + " (g x2), " +
               std::to_string(g2h) + " (g, l_hair x2)");
  }
}

struct Criterion {
  std::string name;
  std::function<void(Check&)> body;
  double limit_seconds;  // <= 0: no runtime bound
};

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <yarngen> [work-dir]\n";
    return 2;
  }
  g_cli = argv[1];
  g_work = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "yarn_acceptance";
  fs::remove_all(g_work);
  fs::create_directories(g_work);

  const std::vector<Criterion> criteria = {
      {"geometry oracle suite", geometry_suite, 30.0},
      {"sampler suite (10,000 samples)", sampler_suite, 10.0},
      {"statistical suite", statistical_suite, 0.0},
      {"reproducibility (generate x2, 64-sample dataset)", reproducibility_suite, 300.0},
      {"edit oracle (halved pitches, doubled g)", edit_suite, 0.0},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Check check;
    const auto t0 = Clock::now();
    try {
      c.body(check);
    } catch (const std::exception& e) {
      check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.limit_seconds > 0.0) check(secs < c.limit_seconds, "runtime " + fmt(secs) + " s over " + fmt(c.limit_seconds) + " s");
    for (const std::string& n : check.notes()) std::cout << "    " << n << "\n";
    for (const std::string& f : check.failures()) std::cout << "    failed: " << f << "\n";
    char line[256];
    std::snprintf(line, sizeof line, "%s  %s  [%d/%d checks, %.2f s%s]", check.ok() ? "PASS" : "FAIL",
                  c.name.c_str(), check.total() - check.failed(), check.total(), secs,
                  c.limit_seconds > 0.0 ? (", limit " + fmt(c.limit_seconds) + " s").c_str() : "");
    std::cout << line << "\n" << std::flush;
    failed += !check.ok();
  }
  std::cout << (failed ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED") << " (" << criteria.size() - failed << "/"
            << criteria.size() << ")\n";
  return failed ? 1 : 0;
}
