#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace heatmc {

/// Per-chain random stream.
///
/// Generator identity: std::mt19937_64 seeded with
/// std::seed_seq{seed_lo32, seed_hi32, stream_lo32, stream_hi32}. Both the
/// engine and seed_seq are fully specified by the C++ standard, and the
/// variate conversions below are written out here rather than taken from
/// <random> distributions (whose algorithms are implementation-defined), so a
/// (seed, stream) pair yields the same numbers on every conforming toolchain.
/// Independent chains use distinct stream ids.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed = 0, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Unbiased integer in [0, n).
  std::uint64_t index(std::uint64_t n);

  /// Full engine state as text; restore() reproduces the continuation.
  std::string state() const;
  void restore(const std::string& text);

  friend bool operator==(const RandomStream& a, const RandomStream& b) {
    return a.engine_ == b.engine_;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace heatmc
