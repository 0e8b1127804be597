#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "yarn/geometry.hpp"
#include "yarn/rng.hpp"

namespace yarn {

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major

  GrayImage() = default;
  GrayImage(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, 0) {}

  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

/// Largest yarn diameter the sampler can produce, 2*(R_ply + r_x).
inline constexpr double kMaxYarnDiameter = 4.55;

/// Pixels per model unit so the largest sampled yarn fills 90% of the height.
double default_scale(int height);

struct RasterOptions {
  int width = 2000;
  int height = 600;
  double scale = 0.0;          // pixels per unit; <= 0 selects default_scale
  double fiber_radius = 0.01;  // t_x; strokes are 2*t_x*scale wide
  /// Yarn z mapped to the image center; defaults to the middle of the
  /// z-range of the non-flyaway strips.
  std::optional<double> z_center;
};

/// Orthographic view along -y: yarn z runs along image x, yarn x along image
/// y (axis at height/2). Strips are anti-aliased strokes shaded by depth,
/// nearer (larger y) brighter, composited with max so the result does not
/// depend on strip order.
GrayImage rasterize(const PolyLineSet& curves, const RasterOptions& options);

GrayImage crop(const GrayImage& image, int x, int y, int width, int height);

/// Crop at a uniformly drawn offset.
GrayImage random_crop(const GrayImage& image, int width, int height, RngStream& rng);

}  // namespace yarn
