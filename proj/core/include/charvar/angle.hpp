#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "charvar/scalar.hpp"

namespace charvar {

/*
 * The angle π·p/q stored in lowest terms with q > 0 and 0 <= p < 2q, so every
 * angle in [0, 2π) has exactly one representation.
 */
class AngleFraction {
 public:
  AngleFraction() = default;

  /// Reduces p/q and wraps the angle into [0, 2π). Throws DomainError for q == 0.
  static AngleFraction make(std::int64_t p, std::int64_t q);

  std::int64_t num() const { return p_; }
  std::int64_t den() const { return q_; }

  double radians() const;
  double cos_value() const;
  /// 2·cos(πp/q), the trace whose half-angle is this angle.
  double trace_value() const;
  /// p/q as an exact rational (multiples of π).
  Rational as_rational() const { return Rational(p_, q_); }

  AngleFraction operator-() const { return make(-p_, q_); }
  friend AngleFraction operator+(const AngleFraction& a, const AngleFraction& b);
  friend AngleFraction operator-(const AngleFraction& a, const AngleFraction& b) { return a + (-b); }

  friend bool operator==(const AngleFraction&, const AngleFraction&) = default;
  friend std::strong_ordering operator<=>(const AngleFraction& a, const AngleFraction& b) {
    // a.p/a.q vs b.p/b.q with positive denominators
    const auto lhs = static_cast<Int128>(a.p_) * b.q_;
    const auto rhs = static_cast<Int128>(b.p_) * a.q_;
    return lhs <=> rhs;
  }

  /// "p/q" meaning π·p/q.
  std::string to_string() const;

 private:
  AngleFraction(std::int64_t p, std::int64_t q) : p_(p), q_(q) {}

  std::int64_t p_ = 0;
  std::int64_t q_ = 1;
};

}  // namespace charvar
