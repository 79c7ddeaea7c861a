#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "charvar/angle.hpp"
#include "charvar/scalar.hpp"

namespace charvar {

/*
 * Structure of Q(ζ_L). With L = n_1···n_r a product of coprime prime powers
 * n_i = p_i^a_i, Q(ζ_L) is the tensor product of the Q(ζ_{n_i}), and each
 * factor has the power basis 1, ζ, ..., ζ^{φ(n_i)-1} reduced modulo
 *   Φ_{p^a}(x) = 1 + x^{p^{a-1}} + x^{2p^{a-1}} + ... + x^{(p-1)p^{a-1}}.
 * A basis element is a multi-index (j_1, ..., j_r), packed in mixed radix.
 * The element with index 0 is 1, so an element is rational exactly when every
 * other coordinate vanishes.
 */
class CycloField {
 public:
  struct Factor {
    std::uint64_t prime;
    std::uint64_t order;        // n_i = prime^a
    std::uint64_t degree;       // φ(n_i)
    std::uint64_t cofactor;     // L / n_i
    std::uint64_t crt_inverse;  // (L / n_i)^{-1} mod n_i
    std::uint64_t stride;       // mixed-radix weight of this factor's digit
  };

  /// Shared, cached field structure for conductor L >= 1.
  static std::shared_ptr<const CycloField> get(std::uint64_t conductor);

  std::uint64_t conductor() const { return conductor_; }
  std::uint64_t degree() const { return degree_; }
  const std::vector<Factor>& factors() const { return factors_; }

  /// ζ_L^e expanded in the basis as (index, ±1) pairs.
  std::vector<std::pair<std::uint64_t, int>> expand_power(std::uint64_t e) const;
  /// Product of two basis elements, expanded in the basis.
  std::vector<std::pair<std::uint64_t, int>> multiply_basis(std::uint64_t i, std::uint64_t j) const;
  /// The exponent e with basis element `index` = ζ_L^e.
  std::uint64_t basis_exponent(std::uint64_t index) const;

  explicit CycloField(std::uint64_t conductor);

 private:
  std::vector<std::pair<std::uint64_t, int>> expand_local(const std::vector<std::uint64_t>& exponents) const;

  std::uint64_t conductor_;
  std::uint64_t degree_ = 1;
  std::vector<Factor> factors_;
};

/// An element of Q(ζ_L) with exact rational coordinates.
class CycloElement {
 public:
  /// Zero of Q(ζ_L).
  explicit CycloElement(std::uint64_t conductor);

  static CycloElement from_rational(std::uint64_t conductor, const Rational& r);
  /// ζ_L^k for any integer k.
  static CycloElement root_of_unity(std::uint64_t conductor, std::int64_t k);
  /// cos(angle) = (ζ + ζ⁻¹)/2 with ζ = exp(i·angle); needs 2q | L.
  static CycloElement cos_of(std::uint64_t conductor, const AngleFraction& angle);

  std::uint64_t conductor() const { return field_->conductor(); }
  std::uint64_t degree() const { return field_->degree(); }
  const CycloField& field() const { return *field_; }

  bool is_zero() const { return coords_.empty(); }
  bool is_rational() const;
  std::optional<Rational> rational_value() const;
  /// Coordinate of the basis element 1.
  Rational constant_term() const;
  /// Copy with the constant coordinate removed (the class modulo Q).
  CycloElement irrational_part() const;

  /// The same number in Q(ζ_M); needs L | M.
  CycloElement embed(std::uint64_t conductor) const;

  /// Nonzero coordinates keyed by packed basis index.
  const std::map<std::uint64_t, Rational>& coordinates() const { return coords_; }

  CycloElement& operator+=(const CycloElement& rhs);
  CycloElement& operator-=(const CycloElement& rhs);
  CycloElement& operator*=(const Rational& r);
  friend CycloElement operator+(CycloElement a, const CycloElement& b) { return a += b; }
  friend CycloElement operator-(CycloElement a, const CycloElement& b) { return a -= b; }
  friend CycloElement operator*(CycloElement a, const Rational& r) { return a *= r; }
  friend CycloElement operator*(const CycloElement& a, const CycloElement& b);
  friend bool operator==(const CycloElement& a, const CycloElement& b);

  /// Real part of the numeric value, in double precision.
  double approx() const;
  std::string to_string() const;

 private:
  void add_term(std::uint64_t index, const Rational& value);
  void require_same_field(const CycloElement& other) const;

  std::shared_ptr<const CycloField> field_;
  std::map<std::uint64_t, Rational> coords_;
};

/// Rank over Q of a family of elements of one field.
std::size_t rank_over_q(const std::vector<CycloElement>& elements);

}  // namespace charvar
