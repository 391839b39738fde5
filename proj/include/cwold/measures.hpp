// Compactly supported signed measures: weighted point sets and grid-sampled
// densities. Both answer half-space mass queries; grids are evaluated by
// cell-center membership (no partial-cell clipping), so grid answers carry
// an O(h) boundary error that downstream tolerances absorb.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cwold/grid.hpp"
#include "cwold/halfspace.hpp"
#include "cwold/vec.hpp"

namespace cwold {

struct DiscreteMeasure {
  std::vector<Vector> points;
  std::vector<double> weights;

  DiscreteMeasure() = default;
  DiscreteMeasure(std::vector<Vector> pts, std::vector<double> w)
      : points(std::move(pts)), weights(std::move(w)) {
    if (points.size() != weights.size())
      throw std::invalid_argument("DiscreteMeasure: points/weights length mismatch");
    for (const auto& p : points)
      if (p.size() != points.front().size())
        throw std::invalid_argument("DiscreteMeasure: mixed dimensions");
    support_radius_ = 0.0;
    for (const auto& p : points) support_radius_ = std::max(support_radius_, norm(p));
  }

  int dim() const { return points.empty() ? 0 : static_cast<int>(points.front().size()); }
  std::size_t size() const { return points.size(); }
  // max ||point||, cached at construction (drives offset-range truncation)
  double support_radius() const { return support_radius_; }

 private:
  double support_radius_ = 0.0;
};

struct GridDensity {
  GridSpec spec;
  std::vector<double> values;  // density per unit volume, row-major

  GridDensity() = default;
  GridDensity(GridSpec s, std::vector<double> v) : spec(std::move(s)), values(std::move(v)) {
    spec.validate();
    if (values.size() != spec.size())
      throw std::invalid_argument("GridDensity: values length != product(shape)");
    compute_radius();
  }
  explicit GridDensity(GridSpec s) : spec(std::move(s)), values(spec.size(), 0.0) {
    spec.validate();
  }

  int dim() const { return spec.dim(); }
  double cell_volume() const { return std::pow(spec.h, spec.dim()); }

  double support_radius() const { return support_radius_; }
  void compute_radius() {
    // radius of the farthest nonzero cell center, plus half a cell diagonal
    double r2max = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] == 0.0) continue;
      r2max = std::max(r2max, norm2(spec.point_flat(i)));
    }
    support_radius_ = std::sqrt(r2max) + 0.5 * spec.h * std::sqrt(double(spec.dim()));
  }

 private:
  double support_radius_ = 0.0;
};

inline double total_mass(const DiscreteMeasure& mu) {
  double s = 0.0;
  for (double w : mu.weights) s += w;
  return s;
}

inline double total_mass(const GridDensity& g) {
  double s = 0.0;
  for (double v : g.values) s += v;
  return s * g.cell_volume();
}

inline double halfspace_mass(const DiscreteMeasure& mu, const HalfSpace& S) {
  if (mu.dim() != 0 && S.dim() != mu.dim())
    throw std::invalid_argument("halfspace_mass: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (contains(S, mu.points[i])) s += mu.weights[i];
  return s;
}

inline double halfspace_mass(const GridDensity& g, const HalfSpace& S) {
  if (S.dim() != g.dim()) throw std::invalid_argument("halfspace_mass: dimension mismatch");
  // Riemann sum over cell centers; projections advance by omega[last]*h along
  // the contiguous axis, so the inner loop is increment + compare.
  const auto& shape = g.spec.shape;
  const int n = g.dim();
  const std::size_t inner = static_cast<std::size_t>(shape[static_cast<std::size_t>(n - 1)]);
  const std::size_t rows = g.spec.size() / inner;
  const double dlast = S.omega[static_cast<std::size_t>(n - 1)] * g.spec.h;
  double s = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t base = r * inner;
    double proj = dot(S.omega, g.spec.point_flat(base));
    for (std::size_t k = 0; k < inner; ++k, proj += dlast) {
      if (proj >= S.p) s += g.values[base + k];
    }
  }
  return s * g.cell_volume();
}

}  // namespace cwold
