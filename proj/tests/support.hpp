#pragma once

#include <random>

#include "charvar/rep.hpp"
#include "charvar/surface.hpp"

namespace charvar::testing {

/// Uniform rational num/den in [lo, hi] with den in [1, max_den].
inline Rational random_rational(std::mt19937_64& rng, long lo, long hi, long max_den) {
  std::uniform_int_distribution<long> den_dist(1, max_den);
  const long den = den_dist(rng);
  std::uniform_int_distribution<long> num_dist(lo * den, hi * den);
  Rational r(num_dist(rng), den);
  r.canonicalize();
  return r;
}

/// Random exact boundary traces strictly inside (-2, 2).
inline BoundaryTraces random_traces(std::mt19937_64& rng, long max_den = 12) {
  const auto t = [&] {
    Rational r;
    do r = random_rational(rng, -2, 2, max_den);
    while (r == 2 || r == -2);
    return r;
  };
  return BoundaryTraces::make(t(), t(), t(), t());
}

/// Float-mode traces with uniformly random entries in (-1.9, 1.9).
inline BoundaryTraces random_float_traces(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.9, 1.9);
  return BoundaryTraces::make(Scalar(d(rng)), Scalar(d(rng)), Scalar(d(rng)), Scalar(d(rng)));
}

/// A product of elementary matrices [[1, t], [0, 1]] and [[1, 0], [t, 1]]
/// with small rational t: determinant 1 by construction.
inline Mat2 random_sl2(std::mt19937_64& rng, int factors = 4) {
  Mat2 m;
  std::bernoulli_distribution upper(0.5);
  for (int i = 0; i < factors; ++i) {
    const Rational t = random_rational(rng, -2, 2, 4);
    m = m * (upper(rng) ? Mat2::make(1, t, 0, 1) : Mat2::make(1, 0, t, 1));
  }
  return m;
}

/// An element of trace t: a random conjugate of [[0, -1], [1, t]].
inline Mat2 random_sl2_with_trace(std::mt19937_64& rng, const Rational& t) {
  const Mat2 p = random_sl2(rng, 3);
  return p * Mat2::make(0, -1, 1, t) * p.inverse();
}

}  // namespace charvar::testing
