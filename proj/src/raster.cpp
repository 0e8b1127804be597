#include "yarn/raster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace yarn {

namespace {

bool is_flyaway(const Strip& s) { return s.level == kHairTag || s.level == kLoopTag; }

struct Canvas {
  int width;
  int height;
  std::vector<float> value;

  // Capsule from a to b (pixel coordinates) with per-end shade.
  void stroke(Vec2 a, Vec2 b, double shade_a, double shade_b, double half_width) {
    const double reach = half_width + 0.5;
    const int x0 = std::max(0, static_cast<int>(std::floor(std::min(a.x(), b.x()) - reach)));
    const int x1 = std::min(width - 1, static_cast<int>(std::ceil(std::max(a.x(), b.x()) + reach)));
    const int y0 = std::max(0, static_cast<int>(std::floor(std::min(a.y(), b.y()) - reach)));
    const int y1 = std::min(height - 1, static_cast<int>(std::ceil(std::max(a.y(), b.y()) + reach)));
    if (x0 > x1 || y0 > y1) return;

    const Vec2 ab = b - a;
    const double len2 = ab.squaredNorm();
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const Vec2 c(x + 0.5, y + 0.5);
        const double t = len2 > 0.0 ? std::clamp((c - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
        const double d = (c - (a + t * ab)).norm();
        const double coverage = std::clamp(reach - d, 0.0, 1.0);
        if (coverage <= 0.0) continue;
        const double v = coverage * (shade_a + t * (shade_b - shade_a));
        float& px = value[static_cast<std::size_t>(y) * width + x];
        px = std::max(px, static_cast<float>(v));
      }
    }
  }
};

}  // namespace

double default_scale(int height) { return 0.9 * height / kMaxYarnDiameter; }

GrayImage rasterize(const PolyLineSet& curves, const RasterOptions& options) {
  if (options.width <= 0 || options.height <= 0)
    throw InvalidParameter("image dimensions must be positive");
  const double scale = options.scale > 0.0 ? options.scale : default_scale(options.height);
  if (!(options.fiber_radius > 0.0)) throw InvalidParameter("fiber radius must be positive");

  double zmin = std::numeric_limits<double>::infinity();
  double zmax = -zmin;
  double depth = 0.0;
  for (const Strip& s : curves.strips) {
    if (is_flyaway(s)) continue;
    for (const Vec3& v : s.vertices) {
      zmin = std::min(zmin, v.z());
      zmax = std::max(zmax, v.z());
      depth = std::max(depth, std::abs(v.y()));
    }
  }
  const double zc = options.z_center ? *options.z_center : (zmin <= zmax ? 0.5 * (zmin + zmax) : 0.0);

  auto shade = [depth](double y) {
    if (depth <= 0.0) return 1.0;
    return 0.3 + 0.7 * std::clamp(0.5 * (y / depth + 1.0), 0.0, 1.0);
  };
  auto project = [&](const Vec3& v) {
    return Vec2((v.z() - zc) * scale + 0.5 * options.width,
                0.5 * options.height - v.x() * scale);
  };

  Canvas canvas{options.width, options.height,
                std::vector<float>(static_cast<std::size_t>(options.width) * options.height, 0.0f)};
  const double half_width = options.fiber_radius * scale;
  for (const Strip& s : curves.strips) {
    for (std::size_t i = 1; i < s.vertices.size(); ++i) {
      const Vec3& a = s.vertices[i - 1];
      const Vec3& b = s.vertices[i];
      canvas.stroke(project(a), project(b), shade(a.y()), shade(b.y()), half_width);
    }
  }

  GrayImage img(options.width, options.height);
  for (std::size_t i = 0; i < img.pixels.size(); ++i)
    img.pixels[i] = static_cast<std::uint8_t>(std::lround(255.0f * std::clamp(canvas.value[i], 0.0f, 1.0f)));
  return img;
}

GrayImage crop(const GrayImage& image, int x, int y, int width, int height) {
  if (width <= 0 || height <= 0 || x < 0 || y < 0 || x + width > image.width ||
      y + height > image.height)
    throw InvalidParameter("crop window does not fit inside the image");
  GrayImage out(width, height);
  for (int r = 0; r < height; ++r)
    std::copy_n(image.pixels.begin() + static_cast<std::ptrdiff_t>(y + r) * image.width + x,
                width, out.pixels.begin() + static_cast<std::ptrdiff_t>(r) * width);
  return out;
}

GrayImage random_crop(const GrayImage& image, int width, int height, RngStream& rng) {
  if (width <= 0 || height <= 0 || width > image.width || height > image.height)
    throw InvalidParameter("crop larger than image");
  const auto x = static_cast<int>(rng.uniform_int(0, image.width - width));
  const auto y = static_cast<int>(rng.uniform_int(0, image.height - height));
  return crop(image, x, y, width, height);
}

}  // namespace yarn
