// Uniform cartesian grids, row-major storage. `origin` is the FIRST CELL
// CENTER (not a corner): cell (i_0,...,i_{n-1}) sits at origin + h*i. The
// same layout stores densities, sampled potentials, and reconstructions.
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cwold/vec.hpp"

namespace cwold {

struct GridSpec {
  Vector origin;           // first cell center
  double h = 1.0;          // spacing, uniform across axes
  std::vector<int> shape;  // cells per axis

  int dim() const { return static_cast<int>(shape.size()); }

  std::size_t size() const {
    std::size_t s = 1;
    for (int e : shape) s *= static_cast<std::size_t>(e);
    return s;
  }

  void validate() const {
    if (shape.empty() || origin.size() != shape.size())
      throw std::invalid_argument("GridSpec: origin/shape dimension mismatch");
    if (!(h > 0.0)) throw std::invalid_argument("GridSpec: h must be positive");
    for (int e : shape)
      if (e < 1) throw std::invalid_argument("GridSpec: empty axis");
  }

  // Row-major strides: last axis contiguous.
  std::vector<std::size_t> strides() const {
    std::vector<std::size_t> st(shape.size());
    std::size_t acc = 1;
    for (int a = dim() - 1; a >= 0; --a) {
      st[static_cast<std::size_t>(a)] = acc;
      acc *= static_cast<std::size_t>(shape[static_cast<std::size_t>(a)]);
    }
    return st;
  }

  Vector point(const std::vector<int>& idx) const {
    Vector x(origin);
    for (std::size_t a = 0; a < x.size(); ++a) x[a] += h * idx[a];
    return x;
  }

  // Decode flat row-major index.
  std::vector<int> unflatten(std::size_t flat) const {
    std::vector<int> idx(shape.size());
    for (int a = dim() - 1; a >= 0; --a) {
      const auto e = static_cast<std::size_t>(shape[static_cast<std::size_t>(a)]);
      idx[static_cast<std::size_t>(a)] = static_cast<int>(flat % e);
      flat /= e;
    }
    return idx;
  }

  Vector point_flat(std::size_t flat) const { return point(unflatten(flat)); }
};

// Centered grid covering [lo, hi]^n inclusive with an odd number of cells
// per axis when (hi-lo)/h is even; nodes at lo, lo+h, ..., hi.
inline GridSpec make_box_grid(int n, double lo, double hi, double h) {
  if (!(hi > lo)) throw std::invalid_argument("make_box_grid: hi <= lo");
  const int per_axis = static_cast<int>(std::llround((hi - lo) / h)) + 1;
  GridSpec g;
  g.origin = Vector(static_cast<std::size_t>(n), lo);
  g.h = h;
  g.shape = std::vector<int>(static_cast<std::size_t>(n), per_axis);
  g.validate();
  return g;
}

}  // namespace cwold
