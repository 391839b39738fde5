// Recovering the measure from its potential: mu = Delta^m f / c_m on
// R^{2m-1}, with c_m = 2 (-2 pi)^{m-1} (2m-2)!! and 0!! = 1. The discrete
// Laplacian is the plain central second-difference stencil composed m
// times; every application shrinks the grid by one cell per face (no
// boundary extrapolation -- supports are compact and grids carry margin,
// extrapolating would inject spurious mass).
//
// Even dimensions ride along by viewing a measure on R^{2m} as a singular
// measure on the hyperplane z = 0 inside R^{2m+1}: half-space masses of the
// lifted measure are half-space masses of the original after slicing the
// boundary hyperplane, so the odd-dimensional pipeline applies verbatim.
#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cwold/grid.hpp"
#include "cwold/measures.hpp"
#include "cwold/potential.hpp"
#include "cwold/query.hpp"
#include "cwold/sphere.hpp"

namespace cwold {

// c_m = 2 (-2 pi)^{m-1} (2m-2)!!; c_1 = 2, c_2 = -8 pi, c_3 = 64 pi^2.
inline double c_const(int m) {
  if (m < 1) throw std::invalid_argument("c_const: m must be >= 1");
  double dfac = 1.0;  // (2m-2)!! with 0!! = 1
  for (int k = 2 * m - 2; k >= 2; k -= 2) dfac *= k;
  double pw = 1.0;
  for (int i = 0; i < m - 1; ++i) pw *= -2.0 * kPi;
  return 2.0 * pw * dfac;
}

struct LaplacianStencil {
  int n = 0;
  double h = 0.0;
  enum class Scheme { central_2nd_order } scheme = Scheme::central_2nd_order;
};

// Central second differences summed over axes; output shrinks by one cell
// on each face. Exact on affine and quadratic fields.
inline GridDensity laplacian_apply(const GridDensity& field) {
  const GridSpec& in = field.spec;
  const int n = in.dim();
  for (int e : in.shape)
    if (e < 3) throw std::invalid_argument("laplacian_apply: axis extent < 3");
  GridSpec out_spec;
  out_spec.h = in.h;
  out_spec.origin = in.origin;
  out_spec.shape = in.shape;
  for (int a = 0; a < n; ++a) {
    out_spec.origin[static_cast<std::size_t>(a)] += in.h;
    out_spec.shape[static_cast<std::size_t>(a)] -= 2;
  }
  GridDensity out(out_spec);
  const auto ist = in.strides();
  const double inv_h2 = 1.0 / (in.h * in.h);
  const std::size_t total = out_spec.size();
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (std::size_t flat = 0; flat < total; ++flat) {
    // input index = output index + 1 on every axis
    std::size_t rem = flat, center = 0;
    for (int a = n - 1; a >= 0; --a) {
      const auto ea = static_cast<std::size_t>(out_spec.shape[static_cast<std::size_t>(a)]);
      center += (rem % ea + 1) * ist[static_cast<std::size_t>(a)];
      rem /= ea;
    }
    double acc = 0.0;
    const double fc = field.values[center];
    for (int a = 0; a < n; ++a) {
      const std::size_t st = ist[static_cast<std::size_t>(a)];
      acc += field.values[center + st] + field.values[center - st] - 2.0 * fc;
    }
    out.values[flat] = acc * inv_h2;
  }
  out.compute_radius();
  return out;
}

// Separable truncated-Gaussian smoothing, width sigma in grid cells, kernel
// radius ceil(3 sigma), renormalized over the in-range window at edges.
// Interior mass is conserved; applied AFTER differencing, since the point is
// to damp noise the iterated stencil amplified.
inline void mollify(GridDensity& g, double sigma_cells) {
  if (sigma_cells <= 0.0) return;
  const int r = static_cast<int>(std::ceil(3.0 * sigma_cells));
  std::vector<double> kern(static_cast<std::size_t>(2 * r + 1));
  for (int j = -r; j <= r; ++j)
    kern[static_cast<std::size_t>(j + r)] =
        std::exp(-0.5 * j * j / (sigma_cells * sigma_cells));
  double ksum = 0.0;
  for (double k : kern) ksum += k;
  for (double& k : kern) k /= ksum;

  const int n = g.dim();
  const auto st = g.spec.strides();
  std::vector<double> tmp(g.values.size());
  for (int a = 0; a < n; ++a) {
    const auto ea = g.spec.shape[static_cast<std::size_t>(a)];
    const std::size_t stride = st[static_cast<std::size_t>(a)];
    const std::size_t total = g.values.size();
    for (std::size_t flat = 0; flat < total; ++flat) {
      const int ia = static_cast<int>((flat / stride) % static_cast<std::size_t>(ea));
      double acc = 0.0, wsum = 0.0;
      const int jlo = std::max(-r, -ia), jhi = std::min(r, ea - 1 - ia);
      for (int j = jlo; j <= jhi; ++j) {
        const double w = kern[static_cast<std::size_t>(j + r)];
        acc += w * g.values[flat + static_cast<std::size_t>(j) * stride];
        wsum += w;
      }
      tmp[flat] = acc / wsum;
    }
    g.values.swap(tmp);
  }
  g.compute_radius();
}

struct ReconstructionReport {
  GridDensity density;
  int m = 0;
  double c_m = 0.0;
  std::optional<double> l1_error;    // filled by callers who know the truth
  std::optional<double> linf_error;
  double negative_mass = 0.0;  // |mass| of negative cells (nonneg. targets)
  double total_mass = 0.0;
  double mc_error = 0.0;       // carried over from the potential stage
  double mollify_width = 0.0;
};

// density = Delta^m f / c_m, then optional mollification.
inline ReconstructionReport invert(const PotentialField& f, int m,
                                   double mollify_width = 0.0) {
  if (m < 1) throw std::invalid_argument("invert: m must be >= 1");
  const int n = f.field.dim();
  if (n != 2 * m - 1)
    throw std::invalid_argument("invert: grid dimension must equal 2m-1");
  for (int e : f.field.spec.shape)
    if (e < 2 * m + 1) throw std::invalid_argument("invert: grid too small for m stencil passes");
  GridDensity work = f.field;
  for (int pass = 0; pass < m; ++pass) work = laplacian_apply(work);
  const double cm = c_const(m);
  for (double& v : work.values) v /= cm;
  if (mollify_width > 0.0) mollify(work, mollify_width);
  ReconstructionReport rep;
  rep.m = m;
  rep.c_m = cm;
  rep.mollify_width = mollify_width;
  rep.mc_error = f.mc_error;
  const double vol = work.cell_volume();
  double neg = 0.0, tot = 0.0;
  for (double v : work.values) {
    tot += v;
    if (v < 0.0) neg -= v;
  }
  rep.negative_mass = neg * vol;
  rep.total_mass = tot * vol;
  rep.density = std::move(work);
  rep.density.compute_radius();
  return rep;
}

// Lift a query on R^k to the embedding R^k x {0} inside R^{k+1}. A half-space
// of R^{k+1} with unit normal w = (w_xy, w_z) and offset p meets the data
// hyperplane z = 0 in the half-space {<w_xy,x> >= p} of R^k; renormalizing
// w_xy to unit length rescales p by 1/||w_xy||. A vertical normal
// (w_xy = 0) contains all or none of the hyperplane depending on sign(p).
inline HalfSpaceQuery embed_query(const HalfSpaceQuery& q) {
  const int n = q.dim;
  const double total = q.total;
  HalfSpaceQuery out;
  out.dim = n + 1;
  out.total = total;
  out.radius = q.radius;
  out.smooth = q.smooth;
  out.p_resolution = q.p_resolution;
  auto base_eval = q.eval;
  out.eval = [base_eval, total, n](const HalfSpace& S) {
    Vector wxy(S.omega.begin(), S.omega.begin() + n);
    const double s = norm(wxy);
    if (s <= 1e-14) return S.p <= 0.0 ? total : 0.0;
    return base_eval(HalfSpace(std::move(wxy), S.p));  // ctor rescales p by 1/s
  };
  if (q.line) {
    auto base_line = q.line;
    out.line = [base_line, total, n](const Vector& omega) {
      Vector wxy(omega.begin(), omega.begin() + n);
      const double s = norm(wxy);
      LineProfile lp;
      if (s <= 1e-14) {
        lp.mass_above = [total](double p) { return p <= 0.0 ? total : 0.0; };
        lp.psi = [total](double a) { return total * std::fabs(a); };
        return lp;
      }
      for (auto& c : wxy) c /= s;
      auto inner = std::make_shared<LineProfile>(base_line(wxy));
      lp.mass_above = [inner, s](double p) { return inner->mass_above(p / s); };
      lp.psi = [inner, s](double a) { return s * inner->psi(a / s); };
      return lp;
    };
  }
  return out;
}

// Full pipeline: potential from query data, then iterated-Laplacian
// inversion. Uses only the query evaluator (and its line hooks).
inline ReconstructionReport reconstruct(const HalfSpaceQuery& q, double total,
                                        const GridSpec& spec, const CroftonSampler& sampler,
                                        int m, double mollify_width = 0.0,
                                        GridSampling mode = GridSampling::shared,
                                        int threads = 1) {
  const PotentialField f = potential_grid(q, total, spec, sampler, mode, threads);
  return invert(f, m, mollify_width);
}

}  // namespace cwold
