#pragma once

#include <cmath>
#include <cstdint>

namespace lab {

// Counter-based pseudo-random stream. Every draw is a pure function of
// (seed, stream, counter), so parallel and serial sweeps produce identical
// values no matter how iterations are scheduled.
class SeedStream {
 public:
  SeedStream(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(mix(seed) ^ mix(stream ^ 0x5851f42d4c957f2dULL))) {}

  SeedStream substream(std::uint64_t s) const {
    SeedStream r(0);
    r.key_ = mix(key_ ^ mix(s ^ 0x14057b7ef767814fULL));
    return r;
  }

  std::uint64_t bits(std::uint64_t counter) const {
    return mix(key_ + counter * 0x9e3779b97f4a7c15ULL);
  }

  // uniform in [0,1)
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  double uniform(std::uint64_t counter, double lo, double hi) const {
    return lo + (hi - lo) * uniform(counter);
  }

  // integer in [0, n)
  std::uint64_t below(std::uint64_t counter, std::uint64_t n) const {
    return bits(counter) % n;
  }

  // standard normal; consumes counters 2c and 2c+1 (Box-Muller)
  double normal(std::uint64_t c) const {
    double u1 = uniform(2 * c);
    double u2 = uniform(2 * c + 1);
    if (u1 < 0x1.0p-60) u1 = 0x1.0p-60;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925287 * u2);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
};

}  // namespace lab
