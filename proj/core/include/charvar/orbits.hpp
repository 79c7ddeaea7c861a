#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "charvar/angle.hpp"
#include "charvar/surface.hpp"
#include "charvar/twists.hpp"

namespace charvar {

/// max(|x1-x2|, |y1-y2|, |z1-z2|)
Scalar box_distance(const TracePoint& p1, const TracePoint& p2);

enum class OrbitStatus {
  /// Closure under all six generators verified with exact arithmetic.
  Finite,
  /// Closure reached in float mode up to the deduplication grid; not a certificate.
  FiniteApprox,
  /// The point budget ran out before closure.
  Truncated,
};

std::string_view to_string(OrbitStatus s);

struct OrbitOptions {
  std::size_t budget = 10000;
  /// Float mode: points are identified when they snap to the same cell of this size.
  double dedup_grid = 1e-9;
  /// Keep, for each point, a word reaching it from the start point.
  bool record_words = false;
};

struct OrbitResult {
  /// Breadth-first discovery order; points[0] is the start point.
  std::vector<TracePoint> points;
  OrbitStatus status = OrbitStatus::Truncated;
  std::size_t budget = 0;
  /// Parallel to `points` when OrbitOptions::record_words is set.
  std::vector<TwistWord> words;

  std::size_t cardinality() const { return points.size(); }
};

/// Breadth-first closure of {p0} under the six twist generators, stopping
/// once `budget` distinct points have been found. Throws DomainError for a
/// zero budget.
OrbitResult enumerate_orbit(const BoundaryTraces& b, const TracePoint& p0, std::size_t budget);
OrbitResult enumerate_orbit(const BoundaryTraces& b, const TracePoint& p0, const OrbitOptions& options);

/// Every generator maps the set into itself (exact comparison in exact mode,
/// box distance <= tol in float mode).
bool is_closed_under_generators(const BoundaryTraces& b, std::span<const TracePoint> points, double tol = 1e-9);

/// Y_n = {2cos(πp/q) : 1 <= q <= n, 0 < p < q, gcd(p, q) = 1}, stored as the
/// half-angles πp/q in increasing order (so trace values decrease).
struct FiltrationLevel {
  int n = 2;
  std::vector<AngleFraction> elements;

  std::vector<double> values() const;
};

/// Throws DomainError for n < 2.
FiltrationLevel filtration(int n);

/*
 * Recovers the half-angle πp/q with level = 2cos(πp/q), 0 < p/q < 1.
 * Exact mode: a rational level has a rational half-angle only for 0, ±1
 * (Niven). Float mode: the smallest q <= max_q whose 2cos(πp/q) lies within
 * 1e-9 of the level.
 */
std::optional<AngleFraction> rational_angle_of(const Scalar& level, int max_q = 100);
/// A level already known as 2cos(angle).
std::optional<AngleFraction> rational_angle_of(const AngleFraction& half_angle);

/// Order of the twist about `axis` acting on p: the denominator q of the
/// half-angle of p[axis], after checking that q applications return to p
/// (exactly in exact mode, to kGeometryTol in float mode). Returns nullopt for
/// an irrational rotation or a float near-miss. Throws DomainError when p is
/// fixed by the twist.
std::optional<std::int64_t> twist_period(const BoundaryTraces& b, const TracePoint& p, Axis axis,
                                         int max_q = 100);

/// True when every point of an angular reference grid (step <= eps/4 in the
/// box metric) on the `axis` = level ellipse has an orbit point q with
/// 0 < D(grid point, q) < eps. Float mode.
bool epsilon_density_on_level(const BoundaryTraces& b, std::span<const TracePoint> orbit, Axis axis,
                              double level, double eps);

/// Upper bound on the box-metric circumference of every nondegenerate level
/// set: 8·(semi-axis sum bound), where the ellipse of each axis is bounded by
/// the widths of the other two coordinate ranges.
double circumference_bound(const BoundaryTraces& b);

/// ceil(circumference_bound / eps) + 1. Throws DomainError for eps <= 0.
std::int64_t n_of_epsilon(const BoundaryTraces& b, double eps);

/// At least two of sigma_x, sigma_y, sigma_z are rational non-integers.
/// Exact mode only (ModeError otherwise).
bool minimality_criterion(const BoundaryTraces& b);

struct ExceptionalFamily {
  BoundaryTraces traces;
  /// {(a²-2, 0, 0), (2-c², 0, 0)}
  std::vector<TracePoint> special_orbit;
};

/// Boundary data (a, a, c, -c) with a² + c² > 4 and at least one of
/// arccos(a/2)/π, arccos(c/2)/π irrational, with its two-point invariant
/// orbit. Exact mode only; throws DomainError when a condition fails.
ExceptionalFamily exceptional_family(const Scalar& a, const Scalar& c);

struct DensityScanOptions {
  double eps = 0.1;
  std::size_t budget = 100000;
  std::uint64_t seed = 0x5eedULL;
  /// Reference grid: surface_sample(b, grid_m, grid_k).
  std::size_t grid_m = 24;
  std::size_t grid_k = 48;
  /// Points spent on the breadth-first closure attempt before the random walk.
  std::size_t closure_budget = 1000;
};

struct DensityReport {
  double covered_fraction = 0.0;
  /// True when the budget was exhausted without the orbit closing up.
  bool truncated = true;
  std::size_t orbit_points = 0;
  std::size_t grid_points = 0;
  std::size_t covered_points = 0;
};

/*
 * Fraction of the reference surface grid lying within eps (box metric) of the
 * orbit of p0. The orbit is sampled by a breadth-first closure attempt
 * followed by a deterministic walk interleaving tau_X, tau_Y and seeded random
 * generators. Growing the budget only adds points, so coverage is monotone.
 */
DensityReport density_scan(const BoundaryTraces& b, const TracePoint& p0, const DensityScanOptions& options);

}  // namespace charvar
