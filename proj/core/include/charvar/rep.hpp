#pragma once

#include <string>
#include <utility>

#include "charvar/surface.hpp"

namespace charvar {

/// 2×2 matrix over Q with determinant 1.
class Mat2 {
 public:
  /// The identity.
  Mat2() = default;
  /// Throws DomainError unless e11·e22 - e12·e21 = 1.
  static Mat2 make(Rational e11, Rational e12, Rational e21, Rational e22);

  const Rational& e11() const { return e11_; }
  const Rational& e12() const { return e12_; }
  const Rational& e21() const { return e21_; }
  const Rational& e22() const { return e22_; }

  Rational trace() const { return e11_ + e22_; }
  Rational det() const { return e11_ * e22_ - e12_ * e21_; }
  /// [[s, -q], [-r, p]] for [[p, q], [r, s]].
  Mat2 inverse() const;
  bool is_identity() const;

  friend Mat2 operator*(const Mat2& m, const Mat2& n);
  friend bool operator==(const Mat2&, const Mat2&) = default;

  std::string to_string() const;

 private:
  Mat2(Rational e11, Rational e12, Rational e21, Rational e22)
      : e11_(std::move(e11)), e12_(std::move(e12)), e21_(std::move(e21)), e22_(std::move(e22)) {}

  Rational e11_{1}, e12_{0}, e21_{0}, e22_{1};
};

inline Mat2 mul(const Mat2& m, const Mat2& n) { return m * n; }
inline Mat2 inverse(const Mat2& m) { return m.inverse(); }
inline Rational trace(const Mat2& m) { return m.trace(); }

/// Images of the four boundary loops, with A·B·C·D = I.
struct RepFour {
  Mat2 A, B, C, D;

  /// Throws DomainError unless A·B·C·D = I.
  static RepFour make(Mat2 a, Mat2 b, Mat2 c, Mat2 d);
};

/// D = (A·B·C)⁻¹.
RepFour from_triple(const Mat2& a, const Mat2& b, const Mat2& c);

struct TraceCoordinates {
  BoundaryTraces traces;
  TracePoint point;
};

/*
 * B = (tr A, tr B, tr C, tr D) and (x, y, z) = (tr AB, tr BC, tr CA). Throws
 * DomainError when a boundary trace lies outside (-2, 2); throws
 * InternalCheckFailure if the point is not exactly on the surface.
 */
TraceCoordinates trace_coordinates(const RepFour& rep);

/// a² + c² > 4 and not both of a, c in {0, ±1} (arccos(t/2)/π is rational
/// exactly for those). Throws DomainError outside (-2, 2).
bool is_in_F(const Rational& a, const Rational& c);

/// Checkable ingredients of density of the image in SL(2, R).
struct DensityIngredients {
  /// Some pair of A, B, C fails to commute.
  bool non_abelian = false;
  /// Some generator moves the trace point.
  bool nontrivial_action = false;
  /// Some boundary trace in (-2, 2) other than 0, ±1: an elliptic element of
  /// infinite order.
  bool irrational_elliptic = false;
  /// All boundary traces lie in (-2, 2).
  bool traces_in_range = false;
};

DensityIngredients density_ingredients(const RepFour& rep);

/// A = B = [[4/5, -3/5], [7/5, 1/5]], C = [[1, -1/4], [1, 3/4]], D = (ABC)⁻¹,
/// with boundary traces (1, 1, 7/4, -7/4) and trace point (-1, 0, 0).
RepFour exceptional_example();

}  // namespace charvar
