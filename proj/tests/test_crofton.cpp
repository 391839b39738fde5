// The invariant half-space measure: normalization constants and the distance
// identity, with a Monte Carlo oracle for the constant itself.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cwold/crofton.hpp"
#include "cwold/rng.hpp"
#include "cwold/sphere.hpp"

using namespace cwold;
using Catch::Approx;

TEST_CASE("normalization constants") {
  REQUIRE(alpha_n(2) == Approx(0.25).epsilon(1e-14));
  REQUIRE(alpha_n(3) == Approx(1.0 / (2.0 * kPi)).epsilon(1e-14));
  REQUIRE(alpha_n(4) == Approx(3.0 / (8.0 * kPi)).epsilon(1e-14));
  REQUIRE(alpha_n(5) == Approx(1.0 / (kPi * kPi)).epsilon(1e-14));
  REQUIRE_THROWS_AS(alpha_n(1), std::invalid_argument);
}

// Independent check of alpha_n: sample half-spaces (omega, p) with p uniform
// on [-R, R], count those separating 0 from x, and scale by the density
// alpha_n * beta_{n-1} * 2R. The result must equal ||x|| without using the
// interval trick, so an error in alpha_n cannot cancel.
namespace {
Estimate separating_mass_mc(int n, const Vector& x, std::int64_t N, std::uint64_t seed) {
  const double R = norm(x);
  const double scale = alpha_n(n) * sphere_area(n - 1) * 2.0 * R;
  RandomStream rs(seed);
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < N; ++i) {
    const Vector omega = sample_direction(rs, n);
    const double p = (2.0 * rs.u01() - 1.0) * R;
    const bool in0 = 0.0 >= p;
    const bool inx = dot(omega, x) >= p;
    if (in0 != inx) ++hits;
  }
  const double q = static_cast<double>(hits) / static_cast<double>(N);
  return Estimate{scale * q, scale * std::sqrt(q * (1.0 - q) / static_cast<double>(N))};
}
}  // namespace

TEST_CASE("separating mass of (0, x) equals ||x|| — the alpha_n oracle") {
  for (int n : {2, 3, 5}) {
    const Vector x = basis(static_cast<std::size_t>(n), 0);
    const Estimate e = separating_mass_mc(n, x, 200000, 40 + static_cast<std::uint64_t>(n));
    INFO("n = " << n << " estimate " << e.value << " +- " << e.std_error);
    REQUIRE(std::fabs(e.value - 1.0) <= 4.0 * e.std_error);
  }
}

TEST_CASE("coincident points have exactly zero distance") {
  const CroftonSampler s(3, 1, 100);
  const Vector x{0.3, -0.7, 2.0};
  const Estimate e = crofton_distance(s, x, x);
  REQUIRE(e.value == 0.0);
  REQUIRE(e.std_error == 0.0);
}

TEST_CASE("distance identity on frozen examples") {
  {
    const CroftonSampler s(3, 2024, 200000);
    const Estimate e = crofton_distance(s, Vector{0.0, 0.0, 0.0}, basis(3, 0));
    REQUIRE(std::fabs(e.value - 1.0) <= 3.0 * e.std_error);
    REQUIRE(e.std_error < 0.005);
  }
  {
    const CroftonSampler s(2, 7, 200000);
    const Estimate e = crofton_distance(s, Vector{1.0, 0.0}, Vector{4.0, 4.0});
    REQUIRE(std::fabs(e.value - 5.0) <= 3.0 * e.std_error);
  }
}

TEST_CASE("estimator is translation invariant at fixed seed") {
  // same directions, same difference vector up to rounding in (x+t)-(y+t)
  const CroftonSampler s(3, 99, 5000);
  const Vector x{0.2, 0.4, -1.0}, y{1.0, -0.3, 0.5}, t{10.0, -3.0, 2.0};
  const Estimate e1 = crofton_distance(s, x, y);
  const Estimate e2 = crofton_distance(s, add(x, t), add(y, t));
  REQUIRE(e1.value == Approx(e2.value).epsilon(1e-12));
  REQUIRE(e1.std_error == Approx(e2.std_error).epsilon(1e-9));
}

TEST_CASE("estimator is exactly 1-homogeneous at fixed seed") {
  const CroftonSampler s(3, 123, 5000);
  const Vector zero(3, 0.0), x{0.5, -1.0, 0.25};
  const Estimate e1 = crofton_distance(s, zero, x);
  const Estimate e3 = crofton_distance(s, zero, scale(x, 3.0));
  REQUIRE(e3.value == Approx(3.0 * e1.value).epsilon(1e-12));
}

TEST_CASE("rotation invariance holds statistically") {
  const Vector a{1.0, 0.0, 0.0}, b{0.0, 1.0, 0.0};  // both distance 1 from 0
  const Vector zero(3, 0.0);
  const CroftonSampler s(3, 404, 100000);
  const Estimate ea = crofton_distance(s, zero, a);
  const Estimate eb = crofton_distance(s, zero, b);
  REQUIRE(std::fabs(ea.value - eb.value) <= 3.0 * (ea.std_error + eb.std_error));
}

TEST_CASE("one dimension is exact: two directions, interval length") {
  const CroftonSampler s(1, 31, 64);
  const Estimate e = crofton_distance(s, Vector{-1.5}, Vector{2.25});
  REQUIRE(e.value == Approx(3.75).epsilon(1e-12));
  REQUIRE(e.std_error == Approx(0.0).margin(1e-12));
}
