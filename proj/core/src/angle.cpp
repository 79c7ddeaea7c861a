#include "charvar/angle.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace charvar {

AngleFraction AngleFraction::make(std::int64_t p, std::int64_t q) {
  if (q == 0) throw DomainError("angle fraction with zero denominator");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  const std::int64_t g = std::gcd(p < 0 ? -p : p, q);
  p /= g;
  q /= g;
  const std::int64_t period = 2 * q;
  p %= period;
  if (p < 0) p += period;
  return AngleFraction(p, q);
}

double AngleFraction::radians() const {
  return std::numbers::pi * static_cast<double>(p_) / static_cast<double>(q_);
}

double AngleFraction::cos_value() const {
  // exact zeros and signs at the quarter turns
  if (q_ == 2) return 0.0;
  if (p_ == 0) return 1.0;
  if (q_ == 1) return -1.0;
  return std::cos(radians());
}

double AngleFraction::trace_value() const { return 2 * cos_value(); }

AngleFraction operator+(const AngleFraction& a, const AngleFraction& b) {
  const std::int64_t l = std::lcm(a.q_, b.q_);
  return AngleFraction::make(a.p_ * (l / a.q_) + b.p_ * (l / b.q_), l);
}

std::string AngleFraction::to_string() const {
  return std::to_string(p_) + "/" + std::to_string(q_);
}

}  // namespace charvar
