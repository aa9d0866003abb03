#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "sefc/vec3.hpp"

namespace sefc {

// splitmix64; advances the state and returns the next value.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Independent named draw streams split from the master seed. Adding draws in
// one subsystem never perturbs another.
enum class StreamDomain : std::uint64_t {
  kMobility = 1,
  kTraffic = 2,
  kRadioLoss = 3,
};

inline std::uint64_t derive_seed(std::uint64_t master, StreamDomain domain,
                                 std::uint64_t index = 0) {
  std::uint64_t x = master;
  std::uint64_t h = splitmix64(x);
  x = h ^ (static_cast<std::uint64_t>(domain) * 0x9e3779b97f4a7c15ULL);
  h = splitmix64(x);
  x = h ^ (index * 0xc2b2ae3d27d4eb4fULL);
  return splitmix64(x);
}

// Deterministic draw stream. The engine (mt19937_64) and every distribution
// below are fully pinned, so sequences are bit-identical across hosts and
// compilers; std::* distributions are implementation-defined and never used.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform in {0, ..., n-1}. Modulo mapping, pinned for replayability.
  std::uint64_t uniform_below(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

  // Standard normal via Box-Muller, two uniforms per sample, no caching.
  double normal() {
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps the log finite
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  Vec3 normal3() { return {normal(), normal(), normal()}; }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 engine_;
};

}  // namespace sefc
