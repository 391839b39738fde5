// Closed half-spaces {x : <omega,x> >= p}. The boundary hyperplane belongs to
// the set; boundary sets carry no mass under the half-space measure, but a
// fixed convention keeps unit tests deterministic.
#pragma once

#include <cmath>
#include <stdexcept>

#include "cwold/vec.hpp"

namespace cwold {

struct HalfSpace {
  Vector omega;  // unit normal; the set lies where <omega,x> is large
  double p = 0.0;

  HalfSpace() = default;

  // Normalizes omega at construction; rejects zero normals.
  HalfSpace(Vector normal, double offset) : omega(std::move(normal)), p(offset) {
    const double r = norm(omega);
    if (!(r > 1e-300)) throw std::invalid_argument("HalfSpace: zero normal");
    if (std::fabs(r - 1.0) > 1e-12) {
      for (auto& c : omega) c /= r;
      p /= r;  // same point set: <w,x> >= p  <=>  <w/r,x> >= p/r
    }
  }

  int dim() const { return static_cast<int>(omega.size()); }
};

inline bool contains(const HalfSpace& S, const Vector& x) {
  return dot(S.omega, x) >= S.p;
}

}  // namespace cwold
