// The forward transform S |-> mu(S) packaged as a black box. Reconstruction
// code sees ONLY this object, never the measure itself: that is the
// information constraint of the whole exercise (half-space masses determine
// the measure, so nothing else may leak in).
//
// Besides the mandatory evaluator, a query may carry a `line` hook giving,
// for a fixed direction omega, the one-dimensional view of the data:
//   mass_above(p) = mu({x : <omega,x> >= p})
//   psi(a)        = integral_0^a (total - 2*mass_above(p)) dp
// Both are determined by evaluator values alone (mass_above IS the
// evaluator; psi is its antiderivative), so the hook adds no information --
// it only replaces numerical quadrature with an exact or closed form.
// Downstream integrators fall back to quadrature on `eval` when absent,
// and tests pin hook and fallback against each other.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "cwold/halfspace.hpp"
#include "cwold/measures.hpp"
#include "cwold/vec.hpp"

namespace cwold {

struct LineProfile {
  std::function<double(double)> mass_above;
  std::function<double(double)> psi;
};

struct HalfSpaceQuery {
  int dim = 0;
  double total = 0.0;   // mu(R^n); equals eval at p = -infinity
  double radius = 0.0;  // support bound: eval is total/0 for |p| > radius
  bool smooth = false;  // true when p -> eval(omega,p) is smooth (densities)
  double p_resolution = 0.0;  // step scale for quadrature fallback; 0 = unknown
  std::function<double(const HalfSpace&)> eval;
  std::function<LineProfile(const Vector& omega)> line;  // optional

  double operator()(const HalfSpace& S) const { return eval(S); }
};

namespace detail {

// Projections of a weighted point cloud onto a direction, sorted, with
// suffix masses and the running integral of (total - 2*mass_above).
struct Pencil {
  std::vector<double> t;       // sorted projections
  std::vector<double> suffix;  // suffix[k] = sum of weights with t >= t[k]
  std::vector<double> cumint;  // cumint[k] = int_{t[0]}^{t[k]} (T - 2 q) dp
  double total = 0.0;

  double mass_above(double p) const {
    // closed convention: atoms with projection == p count as inside
    const auto it = std::lower_bound(t.begin(), t.end(), p);
    const auto k = static_cast<std::size_t>(it - t.begin());
    return k < t.size() ? suffix[k] : 0.0;
  }

  // int_{t[0]}^{p} (T - 2 q) dp for arbitrary p (extends linearly outside).
  double integral_from_first(double p) const {
    if (t.empty()) return p * total;  // q == 0 everywhere
    if (p <= t.front()) return (p - t.front()) * (total - 2.0 * suffix[0]);
    if (p >= t.back()) return cumint.back() + (p - t.back()) * total;
    const auto it = std::upper_bound(t.begin(), t.end(), p);
    const auto k = static_cast<std::size_t>(it - t.begin());  // t[k-1] <= p < t[k]
    const double q = suffix[k];  // mass strictly above t[k-1]... see note below
    return cumint[k - 1] + (p - t[k - 1]) * (total - 2.0 * q);
  }

  double psi(double a) const { return integral_from_first(a) - integral_from_first(0.0); }
};

// Note on the segment value: on the open interval (t[k-1], t[k]) the mass
// above p is suffix[k] (atoms at t[k-1] are below p). Atom positions are a
// null set for the p-integral, so using suffix[k] on the closed-left segment
// is exact for integration purposes.
inline std::shared_ptr<Pencil> build_pencil(const std::vector<Vector>& pts,
                                            const std::vector<double>& w,
                                            const Vector& omega, double total) {
  auto pc = std::make_shared<Pencil>();
  pc->total = total;
  const std::size_t K = pts.size();
  std::vector<std::pair<double, double>> proj(K);
  for (std::size_t i = 0; i < K; ++i) proj[i] = {dot(omega, pts[i]), w[i]};
  std::sort(proj.begin(), proj.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  pc->t.resize(K);
  pc->suffix.resize(K);
  double run = 0.0;
  for (std::size_t i = K; i-- > 0;) {
    pc->t[i] = proj[i].first;
    run += proj[i].second;
    pc->suffix[i] = run;
  }
  pc->cumint.resize(K);
  if (K > 0) {
    pc->cumint[0] = 0.0;
    for (std::size_t k = 1; k < K; ++k) {
      const double q = pc->suffix[k];  // mass above the open segment
      pc->cumint[k] = pc->cumint[k - 1] + (pc->t[k] - pc->t[k - 1]) * (total - 2.0 * q);
    }
  }
  return pc;
}

}  // namespace detail

// Query backed by a discrete measure. The measure is copied into the
// closures; the caller keeps no other channel to it.
inline HalfSpaceQuery make_query(const DiscreteMeasure& mu) {
  auto pts = std::make_shared<std::vector<Vector>>(mu.points);
  auto wts = std::make_shared<std::vector<double>>(mu.weights);
  HalfSpaceQuery q;
  q.dim = mu.dim();
  q.total = total_mass(mu);
  q.radius = mu.support_radius();
  q.smooth = false;
  q.p_resolution = 0.0;
  q.eval = [pts, wts](const HalfSpace& S) {
    double s = 0.0;
    for (std::size_t i = 0; i < pts->size(); ++i)
      if (contains(S, (*pts)[i])) s += (*wts)[i];
    return s;
  };
  const double total = q.total;
  q.line = [pts, wts, total](const Vector& omega) {
    auto pc = detail::build_pencil(*pts, *wts, omega, total);
    LineProfile lp;
    lp.mass_above = [pc](double p) { return pc->mass_above(p); };
    lp.psi = [pc](double a) { return pc->psi(a); };
    return lp;
  };
  return q;
}

// Query backed by a grid density: cells become atoms of mass value*h^n at
// cell centers, matching halfspace_mass's cell-center membership rule.
inline HalfSpaceQuery make_query(const GridDensity& g) {
  auto pts = std::make_shared<std::vector<Vector>>();
  auto wts = std::make_shared<std::vector<double>>();
  const double vol = g.cell_volume();
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    if (g.values[i] == 0.0) continue;
    pts->push_back(g.spec.point_flat(i));
    wts->push_back(g.values[i] * vol);
  }
  HalfSpaceQuery q;
  q.dim = g.dim();
  q.total = total_mass(g);
  q.radius = g.support_radius();
  q.smooth = false;  // step function in p at cell-projection scale
  q.p_resolution = g.spec.h;
  q.eval = [pts, wts](const HalfSpace& S) {
    double s = 0.0;
    for (std::size_t i = 0; i < pts->size(); ++i)
      if (contains(S, (*pts)[i])) s += (*wts)[i];
    return s;
  };
  const double total = q.total;
  q.line = [pts, wts, total](const Vector& omega) {
    auto pc = detail::build_pencil(*pts, *wts, omega, total);
    LineProfile lp;
    lp.mass_above = [pc](double p) { return pc->mass_above(p); };
    lp.psi = [pc](double a) { return pc->psi(a); };
    return lp;
  };
  return q;
}

// Isotropic Gaussian N(0, sigma^2 I) as an analytic query: for any unit
// omega the projected law is N(0, sigma^2), so
//   mass_above(p) = 1/2 erfc(p / (sigma sqrt 2))
//   psi(a) = a erf(a/(sigma sqrt 2)) + sigma sqrt(2/pi) (e^{-a^2/(2 sigma^2)} - 1).
inline HalfSpaceQuery make_gaussian_query(int n, double sigma = 1.0) {
  if (n < 1 || !(sigma > 0.0)) throw std::invalid_argument("make_gaussian_query");
  HalfSpaceQuery q;
  q.dim = n;
  q.total = 1.0;
  q.radius = 8.5 * sigma;  // erfc(8.5/sqrt2) ~ 2e-17: zero at double precision
  q.smooth = true;
  q.eval = [sigma](const HalfSpace& S) {
    return 0.5 * std::erfc(S.p / (sigma * 1.4142135623730951));
  };
  q.line = [sigma](const Vector& /*omega*/) {
    LineProfile lp;
    lp.mass_above = [sigma](double p) {
      return 0.5 * std::erfc(p / (sigma * 1.4142135623730951));
    };
    lp.psi = [sigma](double a) {
      const double z = a / (sigma * 1.4142135623730951);
      return a * std::erf(z) +
             sigma * 0.7978845608028654 * (std::exp(-z * z) - 1.0);
    };
    return lp;
  };
  return q;
}

}  // namespace cwold
