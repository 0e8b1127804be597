#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "yarn/geometry.hpp"

namespace yarn {

/// Binary curve file, little-endian:
///   "YFC1" | u32 strip count | per strip: u32 level, u32 vertex count,
///   vertex count * 3 f64 (x, y, z)
std::string encode_curves(const PolyLineSet& curves);
PolyLineSet decode_curves(std::string_view bytes);

void write_curves(const std::filesystem::path& path, const PolyLineSet& curves);
PolyLineSet read_curves(const std::filesystem::path& path);

/// Debug text format: one block per strip, "v x y z" lines, blocks separated
/// by a blank line. A "# level N" line opens each block.
void write_curves_text(std::ostream& out, const PolyLineSet& curves);
PolyLineSet read_curves_text(std::istream& in);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace yarn
