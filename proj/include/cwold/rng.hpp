// Deterministic randomness. Every stochastic routine takes an explicit 64-bit
// seed; there is no global RNG state. mt19937_64 output is bit-specified by
// the C++ standard, and uniform/normal variates are derived from raw engine
// words by fixed arithmetic (std::*_distribution would be implementation
// defined), so identical seeds give identical streams on any platform. That
// property backs the CLI's byte-identical-rerun contract.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace cwold {

// splitmix64: cheap avalanche mix, used to derive independent sub-stream
// seeds from (master seed, index) without correlations between streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 0x51ed270051ed2700ULL));
}

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0,1): top 53 bits of the engine word.
  double u01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; pairs are cached so consecutive calls
  // consume engine words in a fixed pattern.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = u01();
    while (u1 <= 0.0) u1 = u01();
    const double u2 = u01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace cwold
