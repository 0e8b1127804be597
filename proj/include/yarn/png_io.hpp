#pragma once

#include <filesystem>
#include <string>

#include "yarn/raster.hpp"

namespace yarn {

/// 8-bit grayscale PNG without time or text chunks, so equal images encode
/// to equal bytes.
std::string encode_png(const GrayImage& image);
GrayImage decode_png(const std::string& bytes);

void write_png(const std::filesystem::path& path, const GrayImage& image);
GrayImage read_png(const std::filesystem::path& path);

}  // namespace yarn
