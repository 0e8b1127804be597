#include "yarn/curve_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace yarn {

namespace {

constexpr std::string_view kMagic = "YFC1";

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::string& out, double d) {
  const auto v = std::bit_cast<std::uint64_t>(d);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::uint64_t take(int n) {
    if (bytes_.size() - pos_ < static_cast<std::size_t>(n))
      throw FormatError("curve file truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    pos_ += n;
    return v;
  }
  std::uint32_t u32() { return static_cast<std::uint32_t>(take(4)); }
  double f64() { return std::bit_cast<double>(take(8)); }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode_curves(const PolyLineSet& curves) {
  std::string out;
  out.reserve(8 + curves.size() * 8 + curves.vertex_count() * 24);
  out.append(kMagic);
  put_u32(out, static_cast<std::uint32_t>(curves.size()));
  for (const Strip& s : curves.strips) {
    put_u32(out, s.level);
    put_u32(out, static_cast<std::uint32_t>(s.vertices.size()));
    for (const Vec3& v : s.vertices) {
      put_f64(out, v.x());
      put_f64(out, v.y());
      put_f64(out, v.z());
    }
  }
  return out;
}

PolyLineSet decode_curves(std::string_view bytes) {
  if (bytes.size() < kMagic.size() || bytes.substr(0, kMagic.size()) != kMagic)
    throw FormatError("not a YFC1 curve file");
  Reader r(bytes.substr(kMagic.size()));
  const std::uint32_t count = r.u32();
  PolyLineSet set;
  // Every strip needs at least its 8-byte header.
  if (count > r.remaining() / 8) throw FormatError("curve file truncated");
  set.strips.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    Strip s;
    s.level = r.u32();
    const std::uint32_t n = r.u32();
    if (n > r.remaining() / 24) throw FormatError("curve file truncated");
    s.vertices.reserve(n);
    for (std::uint32_t k = 0; k < n; ++k) {
      const double x = r.f64();
      const double y = r.f64();
      const double z = r.f64();
      s.vertices.emplace_back(x, y, z);
    }
    set.strips.push_back(std::move(s));
  }
  if (r.remaining() != 0) throw FormatError("trailing bytes after curve data");
  return set;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("cannot write " + path.string());
}

void write_curves(const std::filesystem::path& path, const PolyLineSet& curves) {
  write_file(path, encode_curves(curves));
}

PolyLineSet read_curves(const std::filesystem::path& path) {
  return decode_curves(read_file(path));
}

void write_curves_text(std::ostream& out, const PolyLineSet& curves) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (i > 0) out << '\n';
    const Strip& s = curves.strips[i];
    out << "# level " << s.level << '\n';
    for (const Vec3& v : s.vertices) out << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  }
}

PolyLineSet read_curves_text(std::istream& in) {
  PolyLineSet set;
  bool open = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) {
      open = false;
      continue;
    }
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (!open) {
      set.strips.emplace_back();
      open = true;
    }
    if (tag == "#") {
      std::string word;
      std::uint32_t level = 0;
      if (ls >> word >> level && word == "level") set.strips.back().level = level;
    } else if (tag == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z)) throw FormatError("bad vertex line: " + line);
      set.strips.back().vertices.emplace_back(x, y, z);
    } else {
      throw FormatError("unknown line: " + line);
    }
  }
  return set;
}

}  // namespace yarn
