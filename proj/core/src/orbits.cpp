#include "charvar/orbits.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace charvar {

Scalar box_distance(const TracePoint& p1, const TracePoint& p2) {
  if (p1.mode() != p2.mode()) throw ModeError("box_distance: mixed modes");
  Scalar best = (p1.x - p2.x).abs();
  for (const Axis a : {Axis::Y, Axis::Z}) {
    Scalar d = (p1[a] - p2[a]).abs();
    if (d > best) best = std::move(d);
  }
  return best;
}

std::string_view to_string(OrbitStatus s) {
  switch (s) {
    case OrbitStatus::Finite: return "Finite";
    case OrbitStatus::FiniteApprox: return "FiniteApprox";
    case OrbitStatus::Truncated: return "Truncated";
  }
  return "?";
}

namespace {

using Cell = std::array<std::int64_t, 3>;

struct CellHash {
  std::size_t operator()(const Cell& c) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (const auto v : c) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
    return h;
  }
};

Cell snap(const kernel::Point3<double>& p, double grid) {
  Cell c{};
  const double coords[3] = {p.x, p.y, p.z};
  for (int i = 0; i < 3; ++i) {
    const double scaled = std::floor(coords[i] / grid + 0.5);
    if (!std::isfinite(scaled) || std::abs(scaled) > 9e18) {
      throw DomainError("orbit left the representable range during float traversal");
    }
    c[i] = static_cast<std::int64_t>(scaled);
  }
  return c;
}

// Spatial hash over float points with cubic cells of side `cell`; answers
// "is there a stored point within box distance < radius" for radius <= cell.
class BoxIndex {
 public:
  explicit BoxIndex(double cell) : cell_(cell) {}

  void insert(const kernel::Point3<double>& p) {
    cells_[key(p)].push_back({p.x, p.y, p.z});
  }

  bool has_neighbor(const kernel::Point3<double>& p, double radius, bool exclude_coincident) const {
    const Cell k = key(p);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        for (std::int64_t dz = -1; dz <= 1; ++dz) {
          const auto it = cells_.find({k[0] + dx, k[1] + dy, k[2] + dz});
          if (it == cells_.end()) continue;
          for (const auto& q : it->second) {
            const double d = std::max({std::abs(q[0] - p.x), std::abs(q[1] - p.y), std::abs(q[2] - p.z)});
            if (d < radius && (!exclude_coincident || d > 0)) return true;
          }
        }
      }
    }
    return false;
  }

 private:
  Cell key(const kernel::Point3<double>& p) const {
    return {static_cast<std::int64_t>(std::floor(p.x / cell_)), static_cast<std::int64_t>(std::floor(p.y / cell_)),
            static_cast<std::int64_t>(std::floor(p.z / cell_))};
  }

  double cell_;
  std::unordered_map<Cell, std::vector<std::array<double, 3>>, CellHash> cells_;
};

template <class T, class Key, class KeyHash, class MakeKey>
OrbitResult breadth_first(const kernel::Coeffs<T>& k, const kernel::Point3<T>& start, const OrbitOptions& options,
                          MakeKey make_key) {
  std::vector<kernel::Point3<T>> found{start};
  std::vector<TwistWord> words;
  if (options.record_words) words.emplace_back();
  std::unordered_set<Key, KeyHash> seen{make_key(start)};

  bool truncated = false;
  for (std::size_t head = 0; head < found.size() && !truncated; ++head) {
    for (const TwistGenerator& g : all_generators()) {
      kernel::Point3<T> next = found[head];
      kernel::twist(k, next, g.axis, g.power);
      if (!seen.insert(make_key(next)).second) continue;
      if (found.size() >= options.budget) {
        truncated = true;
        break;
      }
      found.push_back(std::move(next));
      if (options.record_words) {
        TwistWord w = words[head];
        w.push_back(g);
        words.push_back(std::move(w));
      }
    }
  }

  OrbitResult result;
  result.budget = options.budget;
  result.points.reserve(found.size());
  for (const auto& p : found) result.points.push_back(TracePoint::from(p));
  result.words = std::move(words);
  if (truncated) {
    result.status = OrbitStatus::Truncated;
  } else {
    result.status = std::is_same_v<T, Rational> ? OrbitStatus::Finite : OrbitStatus::FiniteApprox;
  }
  return result;
}

struct ExactKey {
  kernel::Point3<Rational> p;
  friend bool operator==(const ExactKey& a, const ExactKey& b) {
    return a.p.x == b.p.x && a.p.y == b.p.y && a.p.z == b.p.z;
  }
};

struct ExactKeyHash {
  std::size_t operator()(const ExactKey& k) const noexcept {
    std::size_t h = Scalar(k.p.x).hash();
    h = h * 1000003u ^ Scalar(k.p.y).hash();
    h = h * 1000003u ^ Scalar(k.p.z).hash();
    return h;
  }
};

}  // namespace

OrbitResult enumerate_orbit(const BoundaryTraces& b, const TracePoint& p0, const OrbitOptions& options) {
  if (options.budget == 0) throw DomainError("enumerate_orbit: budget must be positive");
  if (p0.mode() != b.mode()) throw ModeError("enumerate_orbit: boundary traces and point differ in mode");
  if (b.mode() == Mode::Exact) {
    return breadth_first<Rational, ExactKey, ExactKeyHash>(b.coeffs<Rational>(), p0.as<Rational>(), options,
                                                          [](const kernel::Point3<Rational>& p) { return ExactKey{p}; });
  }
  if (!(options.dedup_grid > 0)) throw DomainError("enumerate_orbit: dedup grid must be positive");
  const double grid = options.dedup_grid;
  return breadth_first<double, Cell, CellHash>(b.coeffs<double>(), p0.as<double>(), options,
                                               [grid](const kernel::Point3<double>& p) { return snap(p, grid); });
}

OrbitResult enumerate_orbit(const BoundaryTraces& b, const TracePoint& p0, std::size_t budget) {
  OrbitOptions options;
  options.budget = budget;
  return enumerate_orbit(b, p0, options);
}

bool is_closed_under_generators(const BoundaryTraces& b, std::span<const TracePoint> points, double tol) {
  if (b.mode() == Mode::Exact) {
    std::unordered_set<TracePoint, TracePointHash> set(points.begin(), points.end());
    for (const auto& p : points) {
      for (const auto& g : all_generators()) {
        if (!set.contains(apply_generator(b, p, g))) return false;
      }
    }
    return true;
  }
  for (const auto& p : points) {
    for (const auto& g : all_generators()) {
      const TracePoint image = apply_generator(b, p, g);
      const bool hit = std::any_of(points.begin(), points.end(), [&](const TracePoint& q) {
        return box_distance(image, q).real_value() <= tol;
      });
      if (!hit) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- filtration

std::vector<double> FiltrationLevel::values() const {
  std::vector<double> out;
  out.reserve(elements.size());
  for (const auto& e : elements) out.push_back(e.trace_value());
  return out;
}

FiltrationLevel filtration(int n) {
  if (n < 2) throw DomainError("filtration: n must be at least 2");
  FiltrationLevel level;
  level.n = n;
  for (std::int64_t q = 2; q <= n; ++q) {
    for (std::int64_t p = 1; p < q; ++p) {
      if (std::gcd(p, q) == 1) level.elements.push_back(AngleFraction::make(p, q));
    }
  }
  std::sort(level.elements.begin(), level.elements.end());
  return level;
}

std::optional<AngleFraction> rational_angle_of(const Scalar& level, int max_q) {
  if (!(level.abs() < Scalar::from_int(2, level.mode()))) {
    throw DomainError("rational_angle_of: level " + to_string(level) + " outside (-2, 2)");
  }
  if (level.is_exact()) {
    const Rational& r = level.rational();
    if (r == 0) return AngleFraction::make(1, 2);
    if (r == 1) return AngleFraction::make(1, 3);
    if (r == -1) return AngleFraction::make(2, 3);
    return std::nullopt;
  }
  const double l = level.real_value();
  const double turns = std::acos(l / 2) / std::numbers::pi;
  for (std::int64_t q = 2; q <= max_q; ++q) {
    const auto centre = static_cast<std::int64_t>(std::llround(turns * static_cast<double>(q)));
    for (std::int64_t p = centre - 1; p <= centre + 1; ++p) {
      if (p <= 0 || p >= q || std::gcd(p, q) != 1) continue;
      const AngleFraction a = AngleFraction::make(p, q);
      if (std::abs(a.trace_value() - l) <= 1e-9) return a;
    }
  }
  return std::nullopt;
}

std::optional<AngleFraction> rational_angle_of(const AngleFraction& half_angle) {
  const auto p = half_angle.num();
  const auto q = half_angle.den();
  if (p <= 0 || p >= q) throw DomainError("rational_angle_of: half-angle outside (0, π)");
  return half_angle;
}

std::optional<std::int64_t> twist_period(const BoundaryTraces& b, const TracePoint& p, Axis axis, int max_q) {
  if (is_fixed_point(b, p, axis)) throw DomainError("twist_period: point is fixed by the twist");
  const auto angle = rational_angle_of(p[axis], max_q);
  if (!angle) return std::nullopt;
  const std::int64_t period = angle->den();

  TracePoint q = p;
  for (std::int64_t i = 0; i < period; ++i) q = apply_generator(b, q, {axis, 1});
  if (b.mode() == Mode::Exact) {
    if (!(q == p)) throw InternalCheckFailure("twist_period: exact iteration did not return to the start point");
    return period;
  }
  const double scale = std::max({1.0, std::abs(p.x.real_value()), std::abs(p.y.real_value()), std::abs(p.z.real_value())});
  if (box_distance(p, q).real_value() > kGeometryTol * scale) return std::nullopt;
  return period;
}

// ------------------------------------------------------------------ density

bool epsilon_density_on_level(const BoundaryTraces& b, std::span<const TracePoint> orbit, Axis axis, double level,
                              double eps) {
  if (!(eps > 0)) throw DomainError("epsilon_density_on_level: eps must be positive");
  const BoundaryTraces bf = b.in_mode(Mode::Float);
  const LevelSetGeometry g = level_set(bf, axis, Scalar(level));
  if (g.shape() != LevelSetShape::Ellipse) {
    throw DomainError("epsilon_density_on_level: level set is not a nondegenerate ellipse");
  }
  BoxIndex index(eps);
  for (const auto& p : orbit) index.insert(p.in_mode(Mode::Float).as<double>());

  const auto [sa, sd] = g.semi_axes();
  const double arc = 2 * std::numbers::pi * std::max(sa, sd);
  const auto steps = static_cast<std::size_t>(std::ceil(arc / (eps / 4))) + 8;
  for (std::size_t j = 0; j < steps; ++j) {
    const double theta = 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(steps);
    if (!index.has_neighbor(g.point_at(theta).as<double>(), eps, true)) return false;
  }
  return true;
}

double circumference_bound(const BoundaryTraces& b) {
  std::array<double, 3> width{};
  for (const Axis a : kAxes) {
    const Classification c = classify(b, a);
    // every coordinate of the compact component lies in [-2, 2]
    width[static_cast<int>(a)] = c.range ? std::min(c.range->width(), 4.0) : 4.0;
  }
  double bound = 0;
  for (const Axis a : kAxes) {
    const auto [u, v] = slice_axes(a);
    // semi-axes along sum and diff are each at most (W_u + W_v)/2
    const double semi_axis_sum = width[static_cast<int>(u)] + width[static_cast<int>(v)];
    bound = std::max(bound, 8 * semi_axis_sum);
  }
  return bound;
}

std::int64_t n_of_epsilon(const BoundaryTraces& b, double eps) {
  if (!(eps > 0)) throw DomainError("n_of_epsilon: eps must be positive");
  return static_cast<std::int64_t>(std::ceil(circumference_bound(b) / eps)) + 1;
}

bool minimality_criterion(const BoundaryTraces& b) {
  if (b.mode() != Mode::Exact) throw ModeError("minimality_criterion needs exact traces to decide rationality");
  int count = 0;
  for (const Axis a : kAxes) {
    if (b.sigma(a).rational().get_den() != 1) ++count;
  }
  return count >= 2;
}

ExceptionalFamily exceptional_family(const Scalar& a, const Scalar& c) {
  if (!a.is_exact() || !c.is_exact()) throw ModeError("exceptional_family needs exact traces");
  BoundaryTraces b = BoundaryTraces::make(a, a, c, -c);
  const Rational& ar = a.rational();
  const Rational& cr = c.rational();
  if (!(ar * ar + cr * cr > 4)) throw DomainError("exceptional_family: a² + c² must exceed 4");
  const auto niven_rational = [](const Rational& t) { return t == 0 || t == 1 || t == -1; };
  if (niven_rational(ar) && niven_rational(cr)) {
    throw DomainError("exceptional_family: arccos(a/2)/π and arccos(c/2)/π are both rational");
  }
  ExceptionalFamily fam{b, {}};
  fam.special_orbit.push_back({Scalar(Rational(ar * ar - 2)), Scalar(Rational(0)), Scalar(Rational(0))});
  fam.special_orbit.push_back({Scalar(Rational(2 - cr * cr)), Scalar(Rational(0)), Scalar(Rational(0))});
  for (const auto& p : fam.special_orbit) {
    if (!kappa(b, p).is_zero()) throw InternalCheckFailure("exceptional_family: special point off the surface");
  }
  if (!is_closed_under_generators(b, fam.special_orbit)) {
    throw InternalCheckFailure("exceptional_family: special orbit is not invariant");
  }
  return fam;
}

DensityReport density_scan(const BoundaryTraces& b, const TracePoint& p0, const DensityScanOptions& options) {
  if (!(options.eps > 0)) throw DomainError("density_scan: eps must be positive");
  if (options.budget == 0) throw DomainError("density_scan: budget must be positive");
  if (p0.mode() != b.mode()) throw ModeError("density_scan: boundary traces and point differ in mode");

  const std::vector<TracePoint> grid = surface_sample(b, options.grid_m, options.grid_k);
  const BoundaryTraces bf = b.in_mode(Mode::Float);
  const TracePoint start = p0.in_mode(Mode::Float);

  OrbitOptions closure;
  closure.budget = std::min(options.budget, std::max<std::size_t>(options.closure_budget, 1));
  closure.dedup_grid = options.eps / 10;
  const OrbitResult bfs = enumerate_orbit(bf, start, closure);

  BoxIndex index(options.eps);
  for (const auto& p : bfs.points) index.insert(p.as<double>());
  std::size_t orbit_points = bfs.points.size();

  DensityReport report;
  report.truncated = bfs.status == OrbitStatus::Truncated;
  if (report.truncated && options.budget > orbit_points) {
    const auto k = bf.coeffs<double>();
    auto current = start.as<double>();
    std::mt19937_64 rng(options.seed);
    const std::size_t steps = options.budget - orbit_points;
    for (std::size_t i = 0; i < steps; ++i) {
      TwistGenerator g{};
      switch (i % 3) {
        case 0: g = {Axis::X, 1}; break;
        case 1: g = {Axis::Y, 1}; break;
        default: g = all_generators()[rng() % 6]; break;
      }
      kernel::twist(k, current, g.axis, g.power);
      index.insert(current);
    }
    orbit_points += steps;
  }

  report.orbit_points = orbit_points;
  report.grid_points = grid.size();
  for (const auto& g : grid) {
    if (index.has_neighbor(g.as<double>(), options.eps, false)) ++report.covered_points;
  }
  report.covered_fraction =
      grid.empty() ? 0.0 : static_cast<double>(report.covered_points) / static_cast<double>(grid.size());
  return report;
}

}  // namespace charvar
