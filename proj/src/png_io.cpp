#include "yarn/png_io.hpp"

#include <csetjmp>
#include <cstring>

#include <png.h>

#include "yarn/curve_io.hpp"

namespace yarn {

namespace {

void on_png_error(png_structp png, png_const_charp message) {
  auto* text = static_cast<std::string*>(png_get_error_ptr(png));
  if (text) *text = message;
  std::longjmp(png_jmpbuf(png), 1);
}

void on_png_warning(png_structp, png_const_charp) {}

struct ReadCursor {
  const std::string* bytes;
  std::size_t pos;
};

}  // namespace

std::string encode_png(const GrayImage& image) {
  if (image.width <= 0 || image.height <= 0) throw InvalidParameter("cannot encode an empty image");
  std::string out;
  std::string error;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &error, on_png_error, on_png_warning);
  if (!png) throw IoError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("PNG encode failed: " + error);
  }
  png_set_write_fn(
      png, &out,
      [](png_structp p, png_bytep data, png_size_t len) {
        static_cast<std::string*>(png_get_io_ptr(p))->append(reinterpret_cast<const char*>(data), len);
      },
      nullptr);
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width), static_cast<png_uint_32>(image.height), 8,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < image.height; ++y) {
    auto* row = const_cast<png_bytep>(image.pixels.data() + static_cast<std::size_t>(y) * image.width);
    png_write_row(png, row);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

GrayImage decode_png(const std::string& bytes) {
  if (bytes.size() < 8 || png_sig_cmp(reinterpret_cast<png_const_bytep>(bytes.data()), 0, 8) != 0)
    throw FormatError("not a PNG file");
  std::string error;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &error, on_png_error, on_png_warning);
  if (!png) throw IoError("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  GrayImage image;
  ReadCursor cursor{&bytes, 0};
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError("PNG decode failed: " + error);
  }
  png_set_read_fn(png, &cursor, [](png_structp p, png_bytep data, png_size_t len) {
    auto* c = static_cast<ReadCursor*>(png_get_io_ptr(p));
    if (c->bytes->size() - c->pos < len) png_error(p, "truncated PNG");
    std::memcpy(data, c->bytes->data() + c->pos, len);
    c->pos += len;
  });
  png_read_info(png, info);
  if (png_get_color_type(png, info) != PNG_COLOR_TYPE_GRAY || png_get_bit_depth(png, info) != 8)
    png_error(png, "expected 8-bit grayscale");
  const auto w = static_cast<int>(png_get_image_width(png, info));
  const auto h = static_cast<int>(png_get_image_height(png, info));
  image = GrayImage(w, h);
  for (int y = 0; y < h; ++y)
    png_read_row(png, image.pixels.data() + static_cast<std::size_t>(y) * w, nullptr);
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return image;
}

void write_png(const std::filesystem::path& path, const GrayImage& image) {
  write_file(path, encode_png(image));
}

GrayImage read_png(const std::filesystem::path& path) { return decode_png(read_file(path)); }

}  // namespace yarn
