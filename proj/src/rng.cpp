#include "yarn/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace yarn {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

RngStream RngStream::derive(std::uint64_t seed, std::string_view purpose) {
  // FNV-1a over the purpose tag, then mixed with the seed.
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : purpose) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return RngStream(splitmix64(seed ^ splitmix64(h)));
}

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_closed() {
  constexpr double kMax = static_cast<double>((1ull << 53) - 1);
  return static_cast<double>(engine_() >> 11) / kMax;
}

double RngStream::uniform(double lo, double hi) {
  const double v = lo + (hi - lo) * uniform_closed();
  return v > hi ? hi : v;
}

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  const std::uint64_t limit = ~0ull - (~0ull % span);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

double RngStream::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace yarn
