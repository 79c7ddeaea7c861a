#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "charvar/axis.hpp"
#include "charvar/kernel.hpp"
#include "charvar/scalar.hpp"

namespace charvar {

/// Float-mode tolerance for surface membership |kappa| <= kSurfaceTol.
inline constexpr double kSurfaceTol = 1e-9;
/// Float-mode tolerance for derived geometric identities.
inline constexpr double kGeometryTol = 1e-8;

struct TracePoint {
  Scalar x, y, z;

  TracePoint() = default;
  TracePoint(Scalar x_, Scalar y_, Scalar z_) : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

  const Scalar& operator[](Axis axis) const;
  Scalar& operator[](Axis axis);

  /// Throws ModeError if the coordinates disagree.
  Mode mode() const;
  TracePoint in_mode(Mode mode) const;

  friend bool operator==(const TracePoint& a, const TracePoint& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }

  template <class T>
  kernel::Point3<T> as() const;
  static TracePoint from(const kernel::Point3<Rational>& p) { return {p.x, p.y, p.z}; }
  static TracePoint from(const kernel::Point3<double>& p) {
    return {Scalar(p.x), Scalar(p.y), Scalar(p.z)};
  }
};

struct TracePointHash {
  std::size_t operator()(const TracePoint& p) const noexcept {
    std::size_t h = p.x.hash();
    h = h * 1000003u ^ p.y.hash();
    h = h * 1000003u ^ p.z.hash();
    return h;
  }
};

/// "x,y,z" with each coordinate a rational or decimal literal.
TracePoint parse_point(std::string_view text, Mode mode);
std::string to_string(const TracePoint& p);

/*
 * Boundary holonomy (a, b, c, d) = traces of the four boundary loops, each in
 * the open interval (-2, 2), together with the symmetric invariants entering
 * the cubic surface.
 */
class BoundaryTraces {
 public:
  /// Throws DomainError unless every trace lies strictly inside (-2, 2),
  /// ModeError if the traces mix modes.
  static BoundaryTraces make(Scalar a, Scalar b, Scalar c, Scalar d);

  const Scalar& a() const { return a_; }
  const Scalar& b() const { return b_; }
  const Scalar& c() const { return c_; }
  const Scalar& d() const { return d_; }
  /// Traces in order a, b, c, d.
  const Scalar& trace(int i) const;

  const Scalar& sigma_x() const { return sigma_x_; }  // ab + cd
  const Scalar& sigma_y() const { return sigma_y_; }  // ad + bc
  const Scalar& sigma_z() const { return sigma_z_; }  // ac + bd
  const Scalar& sigma(Axis axis) const;
  const Scalar& s_const() const { return s_const_; }  // a²+b²+c²+d²+abcd-4

  Mode mode() const { return a_.mode(); }
  BoundaryTraces in_mode(Mode mode) const;

  /// Recomputes the derived fields from (a, b, c, d) and compares them
  /// (exactly in exact mode, to kGeometryTol in float mode).
  bool recompute_matches() const;

  template <class T>
  kernel::Coeffs<T> coeffs() const;

 private:
  BoundaryTraces() = default;

  Scalar a_, b_, c_, d_;
  Scalar sigma_x_, sigma_y_, sigma_z_, s_const_;
};

/// "a,b,c,d".
BoundaryTraces parse_traces(std::string_view text, Mode mode);
std::string to_string(const BoundaryTraces& b);

/// x²+y²+z²+xyz - sigma_x·x - sigma_y·y - sigma_z·z + s_const. Zero exactly on
/// the relative character variety.
Scalar kappa(const BoundaryTraces& b, const TracePoint& p);

/// rational_part + root_sign * sqrt(radicand), radicand >= 0.
struct QuadraticSurd {
  Scalar rational_part;
  Scalar radicand;
  int root_sign = 0;

  double to_double() const;
  /// The exact rational value when the radicand is a rational square (exact
  /// mode), or the double value in float mode.
  std::optional<Scalar> value() const;
  /// "p/q", or "p/q + sqrt(r/s)"-style text when irrational; 17 digits in float mode.
  std::string to_string() const;
};

/// Three-way comparison; exact in exact mode, tolerance 1e-12 in float mode.
int compare(const QuadraticSurd& lhs, const QuadraticSurd& rhs);

/// [I⁻, I⁺] = (uv ∓ sqrt((u²-4)(v²-4)))/2 for a pair of boundary traces.
struct PairInterval {
  QuadraticSurd lo, hi;
};

PairInterval pair_interval(const Scalar& u, const Scalar& v);

enum class ComponentClass { SU2, SL2R_compact, Degenerate };

std::string_view to_string(ComponentClass c);

struct OpenInterval {
  QuadraticSurd lo, hi;

  bool contains(double x) const { return x > lo.to_double() && x < hi.to_double(); }
  double width() const { return hi.to_double() - lo.to_double(); }
};

struct Classification {
  ComponentClass kind;
  /// Range of the classified coordinate; empty for Degenerate.
  std::optional<OpenInterval> range;
  PairInterval first, second;
};

/// Component type and the x-range S of the compact component.
Classification classify(const BoundaryTraces& b);

/// The same construction for the y- or z-coordinate. The trace pairs are
/// X: (a,b)|(c,d), Y: (b,c)|(a,d), Z: (c,a)|(b,d).
Classification classify(const BoundaryTraces& b, Axis axis);

enum class LevelSetShape { Ellipse, Point, Empty };

std::string_view to_string(LevelSetShape s);

/*
 * The slice {p[axis] = level} of the surface written in the normal form
 *
 *   weight_sum·(sum - center_sum)² + weight_diff·(diff - center_diff)² = rhs
 *
 * where (u, v) = slice_axes(axis), sum = u + v and diff = u - v. For the X
 * axis center_sum = (a+b)(d+c)/(2+x) and center_diff = (a-b)(d-c)/(2-x).
 */
struct LevelSetGeometry {
  Axis axis;
  Scalar level;
  Scalar center_sum, center_diff;
  Scalar weight_sum, weight_diff;
  Scalar rhs;

  LevelSetShape shape() const;
  /// Left side minus right side of the normal form at p (p[axis] is ignored).
  Scalar residual(const TracePoint& p) const;
  /// Semi-axes of the ellipse along the sum and diff directions (float).
  std::pair<double, double> semi_axes() const;
  /// Point of the ellipse at parameter angle theta (float mode).
  TracePoint point_at(double theta) const;
};

/// Throws DomainError when |level| >= 2.
LevelSetGeometry level_set(const BoundaryTraces& b, Axis axis, const Scalar& level);

/// Solves kappa = 0 for z. Returns 0, 1 (double root) or 2 points. Exact mode
/// throws NeedsFloatMode when the discriminant is not a rational square.
std::vector<TracePoint> lift_to_surface(const BoundaryTraces& b, const Scalar& x, const Scalar& y);

/// m evenly spaced x-values inside S times k angles on each X(x) ellipse, in
/// float mode. Throws DomainError for a degenerate configuration.
std::vector<TracePoint> surface_sample(const BoundaryTraces& b, std::size_t m, std::size_t k);

}  // namespace charvar
