#include "charvar/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

namespace charvar {

std::string_view to_string(Mode mode) { return mode == Mode::Exact ? "exact" : "float"; }

Scalar Scalar::exact(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return Scalar(std::move(r));
}

Scalar Scalar::from_int(long n, Mode mode) {
  return mode == Mode::Exact ? Scalar(Rational(n)) : Scalar(static_cast<double>(n));
}

const Rational& Scalar::rational() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return *r;
  throw ModeError("exact rational requested from a float-mode scalar");
}

double Scalar::real_value() const {
  if (const auto* d = std::get_if<double>(&value_)) return *d;
  throw ModeError("double requested from an exact-mode scalar");
}

double Scalar::to_double() const {
  if (const auto* d = std::get_if<double>(&value_)) return *d;
  return std::get<Rational>(value_).get_d();
}

Scalar Scalar::in_mode(Mode mode) const {
  if (mode == this->mode()) return *this;
  if (mode == Mode::Float) return Scalar(to_double());
  const double d = std::get<double>(value_);
  if (!std::isfinite(d)) throw DomainError("non-finite value has no exact form");
  return Scalar(Rational(d));
}

int Scalar::sign() const {
  if (const auto* d = std::get_if<double>(&value_)) return (*d > 0) - (*d < 0);
  return sgn(std::get<Rational>(value_));
}

Scalar Scalar::abs() const { return sign() < 0 ? -*this : *this; }

Scalar Scalar::operator-() const {
  if (const auto* d = std::get_if<double>(&value_)) return Scalar(-*d);
  return Scalar(Rational(-std::get<Rational>(value_)));
}

void Scalar::require_same_mode(const Scalar& other, const char* op) const {
  if (mode() != other.mode()) {
    throw ModeError(std::string("mixed exact/float operands in ") + op);
  }
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  require_same_mode(rhs, "+");
  if (auto* d = std::get_if<double>(&value_)) {
    *d += std::get<double>(rhs.value_);
  } else {
    std::get<Rational>(value_) += std::get<Rational>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  require_same_mode(rhs, "-");
  if (auto* d = std::get_if<double>(&value_)) {
    *d -= std::get<double>(rhs.value_);
  } else {
    std::get<Rational>(value_) -= std::get<Rational>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  require_same_mode(rhs, "*");
  if (auto* d = std::get_if<double>(&value_)) {
    *d *= std::get<double>(rhs.value_);
  } else {
    std::get<Rational>(value_) *= std::get<Rational>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  require_same_mode(rhs, "/");
  if (rhs.is_zero()) throw DomainError("division by zero");
  if (auto* d = std::get_if<double>(&value_)) {
    *d /= std::get<double>(rhs.value_);
  } else {
    std::get<Rational>(value_) /= std::get<Rational>(rhs.value_);
  }
  return *this;
}

bool operator==(const Scalar& lhs, const Scalar& rhs) {
  lhs.require_same_mode(rhs, "==");
  if (lhs.is_exact()) return std::get<Rational>(lhs.value_) == std::get<Rational>(rhs.value_);
  return std::get<double>(lhs.value_) == std::get<double>(rhs.value_);
}

std::strong_ordering operator<=>(const Scalar& lhs, const Scalar& rhs) {
  lhs.require_same_mode(rhs, "<=>");
  int c = 0;
  if (lhs.is_exact()) {
    c = cmp(std::get<Rational>(lhs.value_), std::get<Rational>(rhs.value_));
  } else {
    const double a = std::get<double>(lhs.value_);
    const double b = std::get<double>(rhs.value_);
    c = (a > b) - (a < b);
  }
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

namespace {

std::size_t hash_mpz(mpz_srcptr z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z)) * 0x9e3779b97f4a7c15ULL;
  const std::size_t n = mpz_size(z);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i))) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace

std::size_t Scalar::hash() const {
  if (const auto* d = std::get_if<double>(&value_)) {
    // +0.0 and -0.0 compare equal and must hash equal
    return std::hash<double>{}(*d == 0.0 ? 0.0 : *d);
  }
  const Rational& r = std::get<Rational>(value_);
  return hash_mpz(r.get_num_mpz_t()) * 31 + hash_mpz(r.get_den_mpz_t());
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw DomainError("empty number");
  if (s.front() == '+') s.erase(0, 1);

  const auto bad = [&] { return DomainError("not a rational number: '" + std::string(text) + "'"); };

  if (s.find_first_of(".eE") != std::string::npos) {
    // exact decimal: [-]digits[.digits][e[+-]digits]
    bool negative = false;
    std::size_t i = 0;
    if (s[i] == '-') {
      negative = true;
      ++i;
    }
    std::string digits;
    long exponent = 0;
    bool any_digit = false;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
      digits += s[i];
      any_digit = true;
    }
    if (i < s.size() && s[i] == '.') {
      ++i;
      for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
        digits += s[i];
        --exponent;
        any_digit = true;
      }
    }
    if (!any_digit) throw bad();
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
      ++i;
      try {
        std::size_t used = 0;
        exponent += std::stol(s.substr(i), &used);
        i += used;
      } catch (const std::exception&) {
        throw bad();
      }
    }
    if (i != s.size()) throw bad();
    Integer num(digits, 10);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational r = exponent < 0 ? Rational(num, scale) : Rational(num * scale);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }

  for (std::size_t i = 0; i < s.size(); ++i) {
    const char ch = s[i];
    const bool ok = std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' ||
                    (ch == '-' && (i == 0 || s[i - 1] == '/'));
    if (!ok) throw bad();
  }
  Rational r;
  if (r.set_str(s, 10) != 0) throw bad();
  if (r.get_den() == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

Scalar parse_scalar(std::string_view text, Mode mode) {
  Rational r = parse_rational(text);
  if (mode == Mode::Exact) return Scalar(std::move(r));
  return Scalar(r.get_d());
}

std::string format_double(double d) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", d == 0.0 ? 0.0 : d);
  return buf;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

std::string to_string(const Scalar& s) {
  if (s.is_exact()) return to_string(s.rational());
  return format_double(s.real_value());
}

bool rational_sqrt(const Rational& r, Rational& root) {
  if (sgn(r) < 0) return false;
  if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t())) {
    return false;
  }
  Integer num, den;
  mpz_sqrt(num.get_mpz_t(), r.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), r.get_den_mpz_t());
  root = Rational(num, den);
  root.canonicalize();
  return true;
}

}  // namespace charvar
