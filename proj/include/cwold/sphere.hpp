// Unit-sphere surface areas and uniform sampling on S^{n-1}.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cwold/rng.hpp"
#include "cwold/vec.hpp"

namespace cwold {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Surface area of the unit k-sphere S^k (embedded in R^{k+1}):
//   beta_k = 2 pi^{(k+1)/2} / Gamma((k+1)/2).
// Evaluated by the two-step recursion beta_k = 2 pi beta_{k-2} / (k - 1)
// from the exact seeds beta_0 = 2 and beta_1 = 2 pi, so the small cases
// (and ratios built from them, like alpha_2 = 1/4) come out exact.
inline double sphere_area(int k) {
  if (k < 0) throw std::invalid_argument("sphere_area: k must be >= 0");
  double b = (k % 2 == 0) ? 2.0 : 2.0 * kPi;
  for (int j = 2 + (k % 2); j <= k; j += 2) b *= 2.0 * kPi / static_cast<double>(j - 1);
  return b;
}

// One uniform direction on S^{n-1}: normalized standard Gaussian vector.
// n = 1 degenerates to {+1, -1} with equal probability.
inline Vector sample_direction(RandomStream& rs, int n) {
  if (n < 1) throw std::invalid_argument("sample_direction: n must be >= 1");
  if (n == 1) return Vector{rs.u01() < 0.5 ? 1.0 : -1.0};
  Vector v(static_cast<std::size_t>(n));
  for (;;) {
    for (auto& c : v) c = rs.normal();
    const double r = norm(v);
    if (r > 1e-12) {  // reject the (measure-zero) tiny-norm draws
      for (auto& c : v) c /= r;
      return v;
    }
  }
}

// count i.i.d. uniform directions, deterministic given seed.
inline std::vector<Vector> sample_sphere(int n, std::int64_t count, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_sphere: n must be >= 1");
  if (count < 0) throw std::invalid_argument("sample_sphere: count must be >= 0");
  RandomStream rs(seed);
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) out.push_back(sample_direction(rs, n));
  return out;
}

}  // namespace cwold
