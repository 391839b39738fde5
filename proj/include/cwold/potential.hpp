// The distance potential f_mu(y) = int (||y-x|| - ||x||) dmu(x), computed two
// ways: directly from the measure (oracle), and from half-space masses only
// (the production path). The half-space identity is
//   f_mu(y) = int over half-spaces of (1_S(y) - 1_S(0)) (total - 2 mu(S))
// against the invariant measure; only half-spaces separating 0 from y
// contribute, so for each direction omega the offset integral runs over the
// interval between 0 and <omega,y>:
//   f_mu(y) = alpha_n beta_{n-1} E_omega [ psi_omega(<omega,y>) ],
//   psi_omega(a) = int_0^a (total - 2 mu({<omega,x> >= p})) dp.
// The probability-measure identity has (1 - 2 mu(S)); (total - 2 mu(S)) is
// the same computation carried out at general total mass, needed because
// comparing two measures subtracts them.
//
// n = 1 needs no sphere sampling at all: f_mu(y) = psi_{+1}(y) exactly.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "cwold/crofton.hpp"
#include "cwold/grid.hpp"
#include "cwold/measures.hpp"
#include "cwold/parallel.hpp"
#include "cwold/quad.hpp"
#include "cwold/query.hpp"
#include "cwold/rng.hpp"
#include "cwold/sphere.hpp"

namespace cwold {

inline double potential_direct(const DiscreteMeasure& mu, const Vector& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    s += mu.weights[i] * (dist(y, mu.points[i]) - norm(mu.points[i]));
  return s;
}

inline double potential_direct(const GridDensity& g, const Vector& y) {
  const double vol = g.cell_volume();
  double s = 0.0;
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    if (g.values[i] == 0.0) continue;
    const Vector c = g.spec.point_flat(i);
    s += g.values[i] * vol * (dist(y, c) - norm(c));
  }
  return s;
}

namespace detail {

// psi_omega(a) for one direction, choosing the best available machinery:
// exact line profile > Gauss-Legendre (smooth) > midpoint at step scale.
inline double psi_segment(const HalfSpaceQuery& q, double total, const Vector& omega,
                          double a, const LineProfile* lp) {
  if (lp && lp->psi) return lp->psi(a);
  const auto integrand = [&](double p) {
    return total - 2.0 * q.eval(HalfSpace(omega, p));
  };
  if (q.smooth) return gl16(integrand, 0.0, a);
  const double width = q.p_resolution > 0.0 ? q.p_resolution : std::fabs(a) / 256.0;
  return midpoint(integrand, 0.0, a, width);
}

}  // namespace detail

// Exact n = 1 evaluation (no Monte Carlo): f(y) = int_0^y (total - 2 q(t)) dt.
inline double potential_1d(const HalfSpaceQuery& q, double total, double y) {
  const Vector e1{1.0};
  if (q.line) {
    const LineProfile lp = q.line(e1);
    return lp.psi(y);
  }
  const auto integrand = [&](double t) { return total - 2.0 * q.eval(HalfSpace(e1, t)); };
  if (q.smooth) {
    // composite GL over [0,y] in panels of width <= 0.25 for accuracy
    const double lo = std::min(0.0, y), hi = std::max(0.0, y);
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / 0.25)));
    double s = 0.0;
    for (int i = 0; i < panels; ++i)
      s += gl16(integrand, lo + (hi - lo) * i / panels, lo + (hi - lo) * (i + 1) / panels);
    return y >= 0.0 ? s : -s;
  }
  const double s = integrate_step_exact(integrand, std::min(0.0, y), std::max(0.0, y));
  return y >= 0.0 ? s : -s;
}

// Monte Carlo estimate of f_mu(y) from query evaluations only.
inline Estimate potential_from_halfspaces(const HalfSpaceQuery& q, double total,
                                          const Vector& y, const CroftonSampler& sampler) {
  if (sampler.n != q.dim || static_cast<int>(y.size()) != q.dim)
    throw std::invalid_argument("potential_from_halfspaces: dimension mismatch");
  if (q.dim == 1) return Estimate{potential_1d(q, total, y[0]), 0.0};
  const double scale = sampler.alpha * sphere_area(sampler.n - 1);
  RandomStream rs(sampler.seed);
  double sum = 0.0, sumsq = 0.0;
  for (std::int64_t i = 0; i < sampler.samples; ++i) {
    const Vector omega = sample_direction(rs, sampler.n);
    double v;
    if (q.line) {
      const LineProfile lp = q.line(omega);
      v = detail::psi_segment(q, total, omega, dot(omega, y), &lp);
    } else {
      v = detail::psi_segment(q, total, omega, dot(omega, y), nullptr);
    }
    sum += v;
    sumsq += v * v;
  }
  const double N = static_cast<double>(sampler.samples);
  const double mean = sum / N;
  double var = sumsq / N - mean * mean;
  if (var < 0.0) var = 0.0;
  return Estimate{scale * mean, scale * std::sqrt(var / N)};
}

enum class Provenance { direct, from_halfspaces };

struct PotentialField {
  GridDensity field;  // stores f values at nodes (not a density)
  Provenance provenance = Provenance::from_halfspaces;
  double mc_error = 0.0;            // rms of per-node standard errors
  std::vector<double> node_se;      // per-node standard errors; empty if exact
};

enum class GridSampling {
  shared,   // one direction set for all nodes: the Monte Carlo error field is
            // smooth in y, so iterated Laplacians amplify it by O(1), not h^-2m
  per_node  // independent per-node streams (seeds derived from node index)
};

// Batch potential over grid nodes from query data only.
inline PotentialField potential_grid(const HalfSpaceQuery& q, double total,
                                     const GridSpec& spec, const CroftonSampler& sampler,
                                     GridSampling mode = GridSampling::shared,
                                     int threads = 1) {
  spec.validate();
  if (spec.dim() != q.dim) throw std::invalid_argument("potential_grid: dimension mismatch");
  PotentialField out;
  out.field = GridDensity(spec);
  out.provenance = Provenance::from_halfspaces;
  const std::size_t nodes = spec.size();

  if (q.dim == 1) {
    for (std::size_t i = 0; i < nodes; ++i)
      out.field.values[i] = potential_1d(q, total, spec.point_flat(i)[0]);
    out.field.compute_radius();
    return out;
  }

  const double scale = sampler.alpha * sphere_area(sampler.n - 1);
  const std::int64_t N = sampler.samples;
  out.node_se.assign(nodes, 0.0);

  if (mode == GridSampling::per_node) {
    for (std::size_t i = 0; i < nodes; ++i) {
      CroftonSampler node_sampler(sampler.n, derive_seed(sampler.seed, i), N);
      const Estimate e = potential_from_halfspaces(q, total, spec.point_flat(i), node_sampler);
      out.field.values[i] = e.value;
      out.node_se[i] = e.std_error;
    }
  } else {
    // Shared mode: directions drawn once; per-omega line profiles (or
    // quadrature) are reused across every node, with projections advanced
    // incrementally along the contiguous axis.
    const std::vector<Vector> dirs = sample_sphere(q.dim, N, sampler.seed);
    const std::size_t nblocks = 16;
    std::vector<std::vector<double>> bsum(nblocks), bsumsq(nblocks);
    const int nthreads = resolve_threads(threads);
    const auto& shape = spec.shape;
    const std::size_t inner = static_cast<std::size_t>(shape.back());
    const std::size_t rows = nodes / inner;
    parallel_blocks(nblocks, nthreads, [&](std::size_t b) {
      auto& sum = bsum[b];
      auto& sumsq = bsumsq[b];
      sum.assign(nodes, 0.0);
      sumsq.assign(nodes, 0.0);
      const std::size_t lo = (static_cast<std::size_t>(N) * b) / nblocks;
      const std::size_t hi = (static_cast<std::size_t>(N) * (b + 1)) / nblocks;
      for (std::size_t k = lo; k < hi; ++k) {
        const Vector& omega = dirs[k];
        LineProfile lp;
        const bool have_line = static_cast<bool>(q.line);
        if (have_line) lp = q.line(omega);
        const double dlast = omega[omega.size() - 1] * spec.h;
        for (std::size_t r = 0; r < rows; ++r) {
          const std::size_t base = r * inner;
          double a = dot(omega, spec.point_flat(base));
          for (std::size_t c = 0; c < inner; ++c, a += dlast) {
            const double v = detail::psi_segment(q, total, omega, a,
                                                 have_line ? &lp : nullptr);
            sum[base + c] += v;
            sumsq[base + c] += v * v;
          }
        }
      }
    });
    for (std::size_t i = 0; i < nodes; ++i) {
      double sum = 0.0, sumsq = 0.0;
      for (std::size_t b = 0; b < nblocks; ++b) {
        sum += bsum[b][i];
        sumsq += bsumsq[b][i];
      }
      const double mean = sum / static_cast<double>(N);
      double var = sumsq / static_cast<double>(N) - mean * mean;
      if (var < 0.0) var = 0.0;
      out.field.values[i] = scale * mean;
      out.node_se[i] = scale * std::sqrt(var / static_cast<double>(N));
    }
  }
  double rms = 0.0;
  for (double s : out.node_se) rms += s * s;
  out.mc_error = std::sqrt(rms / static_cast<double>(nodes));
  out.field.compute_radius();
  return out;
}

// Oracle counterpart: exact potential of a known measure on the same grid.
template <class Measure>
PotentialField potential_grid_direct(const Measure& mu, const GridSpec& spec) {
  spec.validate();
  PotentialField out;
  out.field = GridDensity(spec);
  out.provenance = Provenance::direct;
  for (std::size_t i = 0; i < spec.size(); ++i)
    out.field.values[i] = potential_direct(mu, spec.point_flat(i));
  out.field.compute_radius();
  return out;
}

}  // namespace cwold
