#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace yarn {

/// Seedable random stream with a fixed algorithm and draw order, so the same
/// seed reproduces the same geometry on every platform. The engine is
/// std::mt19937_64, whose output sequence is fixed by the standard; all
/// distributions are implemented here rather than taken from <random>, whose
/// distributions are implementation-defined.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  /// Independent substream for one purpose of one sample (e.g. "geometry").
  static RngStream derive(std::uint64_t seed, std::string_view purpose);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [0, 1], both ends reachable.
  double uniform_closed();
  /// Uniform in the closed interval [lo, hi].
  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi], unbiased.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Standard normal (Box-Muller, one value per call).
  double normal();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace yarn
