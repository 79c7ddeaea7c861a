#pragma once

// Numeric-type-generic kernels behind the Scalar-level API. T is Rational or
// double; callers pick one mode per computation and stay in it.

#include "charvar/axis.hpp"

namespace charvar::kernel {

/// Coefficients of kappa: sigma_x = ab+cd, sigma_y = ad+bc, sigma_z = ac+bd, s = a²+b²+c²+d²+abcd-4.
template <class T>
struct Coeffs {
  T sx, sy, sz, s;

  const T& sigma(Axis axis) const {
    switch (axis) {
      case Axis::X: return sx;
      case Axis::Y: return sy;
      default: return sz;
    }
  }
};

template <class T>
struct Point3 {
  T x, y, z;

  T& operator[](Axis axis) {
    switch (axis) {
      case Axis::X: return x;
      case Axis::Y: return y;
      default: return z;
    }
  }
  const T& operator[](Axis axis) const {
    switch (axis) {
      case Axis::X: return x;
      case Axis::Y: return y;
      default: return z;
    }
  }
};

template <class T>
Coeffs<T> coeffs_from_traces(const T& a, const T& b, const T& c, const T& d) {
  Coeffs<T> k;
  k.sx = a * b + c * d;
  k.sy = a * d + b * c;
  k.sz = a * c + b * d;
  k.s = a * a + b * b + c * c + d * d + a * b * c * d - 4;
  return k;
}

/// x² + y² + z² + xyz - sx·x - sy·y - sz·z + s
template <class T>
T kappa(const Coeffs<T>& k, const Point3<T>& p) {
  T v = p.x * p.x;
  v += p.y * p.y;
  v += p.z * p.z;
  v += p.x * p.y * p.z;
  v -= k.sx * p.x;
  v -= k.sy * p.y;
  v -= k.sz * p.z;
  v += k.s;
  return v;
}

/// Replaces coordinate `var` by the other root of kappa viewed as a quadratic in it.
template <class T>
void vieta(const Coeffs<T>& k, Point3<T>& p, Axis var) {
  const auto [u, w] = slice_axes(var);
  T next = k.sigma(var) - p[u] * p[w];
  next -= p[var];
  p[var] = next;
}

/// Order in which the forward twist about `axis` applies its two substitutions:
/// tau_X: z then y; tau_Y: x then z; tau_Z: y then x.
constexpr std::pair<Axis, Axis> twist_steps(Axis axis) {
  switch (axis) {
    case Axis::X: return {Axis::Z, Axis::Y};
    case Axis::Y: return {Axis::X, Axis::Z};
    case Axis::Z: return {Axis::Y, Axis::X};
  }
  return {Axis::Z, Axis::Y};
}

template <class T>
void twist(const Coeffs<T>& k, Point3<T>& p, Axis axis, int power) {
  const auto [first, second] = twist_steps(axis);
  if (power > 0) {
    vieta(k, p, first);
    vieta(k, p, second);
  } else {
    vieta(k, p, second);
    vieta(k, p, first);
  }
}

}  // namespace charvar::kernel
