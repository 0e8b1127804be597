#include "yarn/geometry.hpp"

namespace yarn {

std::size_t PolyLineSet::vertex_count() const {
  std::size_t n = 0;
  for (const Strip& s : strips) n += s.vertices.size();
  return n;
}

void PolyLineSet::append(const PolyLineSet& other) {
  strips.insert(strips.end(), other.strips.begin(), other.strips.end());
}

void PolyLineSet::translate(const Vec3& offset) {
  for (Strip& s : strips)
    for (Vec3& v : s.vertices) v += offset;
}

double arc_length(const std::vector<Vec3>& vertices) {
  double len = 0.0;
  for (std::size_t i = 1; i < vertices.size(); ++i)
    len += (vertices[i] - vertices[i - 1]).norm();
  return len;
}

}  // namespace yarn
