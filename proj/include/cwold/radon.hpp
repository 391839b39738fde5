// Classical Radon transform J(omega,p) = integral of f over the hyperplane
// <omega,x> = p, plus the odd-dimension inversion
//   f(x) = 1/2 (2 pi)^{1-n} (-Delta)^{(n-1)/2} int_{S^{n-1}} J(omega,<omega,x>) dOmega.
// Both directions are desk-scale: forward by one pass of projection binning
// per direction, inversion by backprojection onto a grid followed by the
// same central stencil the main pipeline uses.
//
// Binning spreads each cell's mass linearly over the two nearest offset bins
// (tent kernel, the adjoint of linear interpolation). Nearest-bin rounding
// leaves O(dp)-scale quantization ripple on the sinogram that the inversion
// stencil would amplify; the tent kernel suppresses it and conserves mass
// exactly.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cwold/grid.hpp"
#include "cwold/inversion.hpp"
#include "cwold/measures.hpp"
#include "cwold/sphere.hpp"
#include "cwold/vec.hpp"

namespace cwold {

struct Sinogram {
  std::vector<Vector> directions;  // unit vectors
  double p0 = 0.0;                 // first offset sample
  double dp = 0.0;                 // offset spacing
  int np = 0;                      // samples per direction
  std::vector<double> values;      // [dir][p], row-major

  double& at(std::size_t d, int k) { return values[d * static_cast<std::size_t>(np) + k]; }
  double at(std::size_t d, int k) const {
    return values[d * static_cast<std::size_t>(np) + k];
  }

  // Riemann mass along one direction; equals the total integral of f.
  double row_integral(std::size_t d) const {
    double s = 0.0;
    for (int k = 0; k < np; ++k) s += at(d, k);
    return s * dp;
  }

  // Linear interpolation of J(d, p); zero outside the sampled range.
  double interp(std::size_t d, double p) const {
    const double t = (p - p0) / dp;
    if (t <= 0.0 || t >= np - 1) {
      // inside-range endpoints still contribute their node value
      if (t == 0.0) return at(d, 0);
      if (t == static_cast<double>(np - 1)) return at(d, np - 1);
      return 0.0;
    }
    const int k = static_cast<int>(t);
    const double fr = t - k;
    return at(d, k) * (1.0 - fr) + at(d, k + 1) * fr;
  }

  // integral_p^infinity of the piecewise-linear interpolant.
  double cumulative_above(std::size_t d, double p) const {
    const double pend = p0 + dp * (np - 1);
    if (p >= pend) return 0.0;
    double t = (p - p0) / dp;
    if (t < 0.0) t = 0.0;
    int k = static_cast<int>(t);
    double s = 0.0;
    // partial piece [max(p,p0), x_{k+1}]
    const double xk1 = p0 + dp * (k + 1);
    const double pa = std::max(p, p0);
    s += 0.5 * (interp(d, pa) + at(d, k + 1)) * (xk1 - pa);
    for (int j = k + 1; j + 1 < np; ++j) s += 0.5 * (at(d, j) + at(d, j + 1)) * dp;
    return s;
  }
};

// Symmetric offset grid covering every projection of the density's bounding
// box, with a margin of `margin_bins` bins on each side.
inline void fit_p_range(const GridDensity& f, double dp, int margin_bins, double& p0,
                        int& np) {
  const int n = f.dim();
  double reach = 0.0;
  for (int a = 0; a < n; ++a) {
    const double lo = f.spec.origin[static_cast<std::size_t>(a)];
    const double hi = lo + f.spec.h * (f.spec.shape[static_cast<std::size_t>(a)] - 1);
    reach += std::max(lo * lo, hi * hi);
  }
  reach = std::sqrt(reach);  // max |<omega,cell>| over unit omega
  const int half = static_cast<int>(std::ceil(reach / dp)) + margin_bins;
  p0 = -dp * half;
  np = 2 * half + 1;
}

inline Sinogram radon_forward(const GridDensity& f, const std::vector<Vector>& directions,
                              double p0, double dp, int np) {
  const int n = f.dim();
  for (const auto& w : directions)
    if (static_cast<int>(w.size()) != n)
      throw std::invalid_argument("radon_forward: direction dimension mismatch");
  Sinogram sg;
  sg.directions = directions;
  sg.p0 = p0;
  sg.dp = dp;
  sg.np = np;
  sg.values.assign(directions.size() * static_cast<std::size_t>(np), 0.0);
  const double cell_to_density = f.cell_volume() / dp;
  const auto& shape = f.spec.shape;
  const std::size_t inner = static_cast<std::size_t>(shape[static_cast<std::size_t>(n - 1)]);
  const std::size_t rows = f.spec.size() / inner;
  for (std::size_t d = 0; d < directions.size(); ++d) {
    const Vector& w = directions[d];
    double* J = &sg.values[d * static_cast<std::size_t>(np)];
    const double dlast = w[static_cast<std::size_t>(n - 1)] * f.spec.h;
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t base = r * inner;
      double proj = dot(w, f.spec.point_flat(base));
      for (std::size_t c = 0; c < inner; ++c, proj += dlast) {
        const double v = f.values[base + c];
        if (v == 0.0) continue;
        const double t = (proj - p0) / dp;
        const int k = static_cast<int>(t);
        if (t < 0.0 || k + 1 >= np)
          throw std::out_of_range("radon_forward: offset grid does not cover projections");
        const double fr = t - k;
        J[k] += v * (1.0 - fr);
        J[k + 1] += v * fr;
      }
    }
    for (int k = 0; k < np; ++k) J[k] *= cell_to_density;
  }
  return sg;
}

// In-place Gaussian smoothing of each sinogram row along p (sigma in bins,
// kernel radius 4 sigma, zero-padded). Smoothing J by a Gaussian of width
// s*dp reconstructs f convolved with the SAME isotropic Gaussian, so a
// 1-bin presmooth trades a ~1% wide bias for the removal of bin-scale
// ripple that the stencil would otherwise amplify.
inline void smooth_sinogram(Sinogram& sg, double sigma_bins) {
  if (sigma_bins <= 0.0) return;
  const int r = static_cast<int>(std::ceil(4.0 * sigma_bins));
  std::vector<double> kern(static_cast<std::size_t>(2 * r + 1));
  double ks = 0.0;
  for (int j = -r; j <= r; ++j) {
    kern[static_cast<std::size_t>(j + r)] = std::exp(-0.5 * j * j / (sigma_bins * sigma_bins));
    ks += kern[static_cast<std::size_t>(j + r)];
  }
  for (double& k : kern) k /= ks;
  std::vector<double> row(static_cast<std::size_t>(sg.np));
  for (std::size_t d = 0; d < sg.directions.size(); ++d) {
    for (int k = 0; k < sg.np; ++k) {
      double acc = 0.0;
      for (int j = -r; j <= r; ++j) {
        const int src = k + j;
        if (src < 0 || src >= sg.np) continue;  // zero padding
        acc += kern[static_cast<std::size_t>(j + r)] * sg.at(d, src);
      }
      row[static_cast<std::size_t>(k)] = acc;
    }
    for (int k = 0; k < sg.np; ++k) sg.at(d, k) = row[static_cast<std::size_t>(k)];
  }
}

// John's odd-n inversion on a grid: backproject, then (n-1)/2 negated
// stencil passes, scaled by 1/2 (2 pi)^{1-n}. The output grid shrinks by
// (n-1)/2 cells per face. presmooth_bins > 0 smooths a COPY of the sinogram
// first. n = 1 degenerates to averaging the two rows with no stencil pass.
inline GridDensity radon_invert_odd(const Sinogram& sg, const GridSpec& xgrid,
                                    double presmooth_bins = 0.0) {
  const int n = xgrid.dim();
  if (n % 2 == 0) throw std::invalid_argument("radon_invert_odd: n must be odd");
  if (sg.directions.empty()) throw std::invalid_argument("radon_invert_odd: empty sinogram");
  xgrid.validate();
  const Sinogram* use = &sg;
  Sinogram smoothed;
  if (presmooth_bins > 0.0) {
    smoothed = sg;
    smooth_sinogram(smoothed, presmooth_bins);
    use = &smoothed;
  }
  GridDensity G(xgrid);
  const std::size_t nodes = xgrid.size();
  const std::size_t inner = static_cast<std::size_t>(xgrid.shape.back());
  const std::size_t rows = nodes / inner;
  for (std::size_t d = 0; d < use->directions.size(); ++d) {
    const Vector& w = use->directions[d];
    const double dlast = w[w.size() - 1] * xgrid.h;
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t base = r * inner;
      double proj = dot(w, xgrid.point_flat(base));
      for (std::size_t c = 0; c < inner; ++c, proj += dlast)
        G.values[base + c] += use->interp(d, proj);
    }
  }
  const double mean_scale = sphere_area(n - 1) / static_cast<double>(use->directions.size());
  for (double& v : G.values) v *= mean_scale;  // integral over S^{n-1}
  const int passes = (n - 1) / 2;
  for (int k = 0; k < passes; ++k) {
    G = laplacian_apply(G);
    for (double& v : G.values) v = -v;
  }
  const double pref = 0.5 * std::pow(2.0 * kPi, 1 - n);
  for (double& v : G.values) v *= pref;
  G.compute_radius();
  return G;
}

}  // namespace cwold
