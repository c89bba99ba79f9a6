#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace gsel {

// splitmix64 finalizer (Steele/Lea/Flood; Vigna's fixed-increment variant).
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    return splitmix64_mix(state);
  }
};

// xoshiro256++ with explicit stream derivation. One engine per macro
// replication: stream i of root seed s is a pure function of (s, i), so
// results cannot depend on worker scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) { reseed(seed); }

  static Rng substream(std::uint64_t root_seed, std::uint64_t stream) {
    std::uint64_t mixed =
        splitmix64_mix(root_seed ^ splitmix64_mix(0x9E3779B97F4A7C15ULL * (stream + 1)));
    return Rng(mixed);
  }

  void reseed(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
    have_cached_normal_ = false;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform on [0,1), 53 random bits
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform on (0,1], safe as a log argument
  double uniform01_open() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Box-Muller; the second variate of each pair is cached.
  double normal() {
    if (have_cached_normal_) {
      have_cached_normal_ = false;
      return cached_normal_;
    }
    const double u1 = uniform01_open();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    cached_normal_ = r * std::sin(a);
    have_cached_normal_ = true;
    return r * std::cos(a);
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  // Inversion by sequential search; fine for the moderate means used here.
  int poisson(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("poisson: lambda must be > 0");
    const double u = uniform01();
    double p = std::exp(-lambda);
    double cdf = p;
    int k = 0;
    const int cap = static_cast<int>(lambda + 40.0 * std::sqrt(lambda) + 100.0);
    while (u > cdf && k < cap) {
      ++k;
      p *= lambda / k;
      cdf += p;
    }
    return k;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool have_cached_normal_ = false;
};

}  // namespace gsel
