// Small dense vector helpers shared by every module. Vectors are plain
// std::vector<double>; dimension checks throw std::invalid_argument.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cwold {

using Vector = std::vector<double>;

inline void check_same_dim(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
  }
}

inline double dot(const Vector& a, const Vector& b) {
  check_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vector& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}

inline double norm(const Vector& a) { return std::sqrt(norm2(a)); }

inline double dist(const Vector& a, const Vector& b) {
  check_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline Vector sub(const Vector& a, const Vector& b) {
  check_same_dim(a, b);
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vector add(const Vector& a, const Vector& b) {
  check_same_dim(a, b);
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vector scale(const Vector& a, double c) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

// i-th standard basis vector of R^n.
inline Vector basis(std::size_t n, std::size_t i) {
  Vector r(n, 0.0);
  r.at(i) = 1.0;
  return r;
}

}  // namespace cwold
