#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace charvar {

using Rational = mpq_class;
using Integer = mpz_class;

__extension__ typedef __int128 Int128;
__extension__ typedef unsigned __int128 UInt128;

enum class Mode { Exact, Float };

std::string_view to_string(Mode mode);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of different numeric modes were combined.
class ModeError : public Error {
 public:
  using Error::Error;
};

/// An argument violated a documented precondition (trace range, level range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An exact computation needed an irrational square root.
class NeedsFloatMode : public Error {
 public:
  using Error::Error;
};

/// A self-check that must hold by construction failed.
class InternalCheckFailure : public Error {
 public:
  using Error::Error;
};

/*
 * A real number held either as an arbitrary-precision rational (Mode::Exact)
 * or as a double (Mode::Float). Arithmetic never coerces between the two:
 * mixing modes throws ModeError.
 */
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(const Rational& r) : value_(r) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational&& r) : value_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(double d) : value_(d) {}

  static Scalar exact(long num, long den = 1);
  static Scalar real(double d) { return Scalar(d); }
  /// The integer n in the requested mode.
  static Scalar from_int(long n, Mode mode);

  Mode mode() const { return value_.index() == 0 ? Mode::Exact : Mode::Float; }
  bool is_exact() const { return mode() == Mode::Exact; }

  /// Throws ModeError in float mode.
  const Rational& rational() const;
  /// Throws ModeError in exact mode.
  double real_value() const;
  /// Lossy conversion, always allowed (reporting, plotting, seeding float runs).
  double to_double() const;
  /// Converts to `mode`; exact -> float rounds, float -> exact is exact binary expansion.
  Scalar in_mode(Mode mode) const;

  int sign() const;
  bool is_zero() const { return sign() == 0; }
  Scalar abs() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

  friend bool operator==(const Scalar& lhs, const Scalar& rhs);
  friend std::strong_ordering operator<=>(const Scalar& lhs, const Scalar& rhs);

  std::size_t hash() const;

  const std::variant<Rational, double>& variant() const { return value_; }

 private:
  void require_same_mode(const Scalar& other, const char* op) const;

  std::variant<Rational, double> value_;
};

/// Parses "p/q", an integer, or a decimal literal. In exact mode decimals are
/// converted exactly (0.1 -> 1/10); in float mode everything becomes a double.
Scalar parse_scalar(std::string_view text, Mode mode);

/// Parses "p/q" / integer / decimal into an exact rational.
Rational parse_rational(std::string_view text);

/// "p/q" (or "p") in exact mode, 17 significant digits in float mode.
std::string to_string(const Scalar& s);
std::string to_string(const Rational& r);
std::string format_double(double d);

/// Exact square root when r is the square of a rational.
bool rational_sqrt(const Rational& r, Rational& root);

}  // namespace charvar

template <>
struct std::hash<charvar::Scalar> {
  std::size_t operator()(const charvar::Scalar& s) const noexcept { return s.hash(); }
};
