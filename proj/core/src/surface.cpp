#include "charvar/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace charvar {

// ---------------------------------------------------------------- TracePoint

const Scalar& TracePoint::operator[](Axis axis) const {
  switch (axis) {
    case Axis::X: return x;
    case Axis::Y: return y;
    default: return z;
  }
}

Scalar& TracePoint::operator[](Axis axis) {
  switch (axis) {
    case Axis::X: return x;
    case Axis::Y: return y;
    default: return z;
  }
}

Mode TracePoint::mode() const {
  const Mode m = x.mode();
  if (y.mode() != m || z.mode() != m) throw ModeError("trace point mixes exact and float coordinates");
  return m;
}

TracePoint TracePoint::in_mode(Mode m) const { return {x.in_mode(m), y.in_mode(m), z.in_mode(m)}; }

template <>
kernel::Point3<Rational> TracePoint::as<Rational>() const {
  return {x.rational(), y.rational(), z.rational()};
}

template <>
kernel::Point3<double> TracePoint::as<double>() const {
  return {x.real_value(), y.real_value(), z.real_value()};
}

namespace {

std::vector<std::string> split_commas(std::string_view text) {
  std::vector<std::string> parts;
  std::string current;
  for (const char ch : text) {
    if (ch == ',') {
      parts.push_back(current);
      current.clear();
    } else {
      current += ch;
    }
  }
  parts.push_back(current);
  return parts;
}

}  // namespace

TracePoint parse_point(std::string_view text, Mode mode) {
  const auto parts = split_commas(text);
  if (parts.size() != 3) throw DomainError("expected three comma-separated coordinates, got '" + std::string(text) + "'");
  return {parse_scalar(parts[0], mode), parse_scalar(parts[1], mode), parse_scalar(parts[2], mode)};
}

std::string to_string(const TracePoint& p) {
  return "(" + to_string(p.x) + ", " + to_string(p.y) + ", " + to_string(p.z) + ")";
}

// ------------------------------------------------------------ BoundaryTraces

BoundaryTraces BoundaryTraces::make(Scalar a, Scalar b, Scalar c, Scalar d) {
  const Mode m = a.mode();
  if (b.mode() != m || c.mode() != m || d.mode() != m) {
    throw ModeError("boundary traces mix exact and float values");
  }
  const Scalar two = Scalar::from_int(2, m);
  for (const Scalar* t : {&a, &b, &c, &d}) {
    if (!(t->abs() < two)) {
      throw DomainError("boundary trace " + to_string(*t) + " outside the open interval (-2, 2)");
    }
  }
  BoundaryTraces bt;
  bt.a_ = std::move(a);
  bt.b_ = std::move(b);
  bt.c_ = std::move(c);
  bt.d_ = std::move(d);
  bt.sigma_x_ = bt.a_ * bt.b_ + bt.c_ * bt.d_;
  bt.sigma_y_ = bt.a_ * bt.d_ + bt.b_ * bt.c_;
  bt.sigma_z_ = bt.a_ * bt.c_ + bt.b_ * bt.d_;
  bt.s_const_ = bt.a_ * bt.a_ + bt.b_ * bt.b_ + bt.c_ * bt.c_ + bt.d_ * bt.d_ +
                bt.a_ * bt.b_ * bt.c_ * bt.d_ - Scalar::from_int(4, m);
  return bt;
}

const Scalar& BoundaryTraces::trace(int i) const {
  switch (i) {
    case 0: return a_;
    case 1: return b_;
    case 2: return c_;
    case 3: return d_;
    default: throw DomainError("boundary trace index out of range");
  }
}

const Scalar& BoundaryTraces::sigma(Axis axis) const {
  switch (axis) {
    case Axis::X: return sigma_x_;
    case Axis::Y: return sigma_y_;
    default: return sigma_z_;
  }
}

BoundaryTraces BoundaryTraces::in_mode(Mode m) const {
  return make(a_.in_mode(m), b_.in_mode(m), c_.in_mode(m), d_.in_mode(m));
}

bool BoundaryTraces::recompute_matches() const {
  const Mode m = mode();
  const Scalar sx = a_ * b_ + c_ * d_;
  const Scalar sy = a_ * d_ + b_ * c_;
  const Scalar sz = a_ * c_ + b_ * d_;
  const Scalar s = a_ * a_ + b_ * b_ + c_ * c_ + d_ * d_ + a_ * b_ * c_ * d_ - Scalar::from_int(4, m);
  const auto same = [m](const Scalar& lhs, const Scalar& rhs) {
    if (m == Mode::Exact) return lhs == rhs;
    return std::abs(lhs.real_value() - rhs.real_value()) <= kGeometryTol;
  };
  return same(sx, sigma_x_) && same(sy, sigma_y_) && same(sz, sigma_z_) && same(s, s_const_);
}

template <>
kernel::Coeffs<Rational> BoundaryTraces::coeffs<Rational>() const {
  return {sigma_x_.rational(), sigma_y_.rational(), sigma_z_.rational(), s_const_.rational()};
}

template <>
kernel::Coeffs<double> BoundaryTraces::coeffs<double>() const {
  return {sigma_x_.real_value(), sigma_y_.real_value(), sigma_z_.real_value(), s_const_.real_value()};
}

BoundaryTraces parse_traces(std::string_view text, Mode mode) {
  const auto parts = split_commas(text);
  if (parts.size() != 4) throw DomainError("expected four comma-separated boundary traces, got '" + std::string(text) + "'");
  return BoundaryTraces::make(parse_scalar(parts[0], mode), parse_scalar(parts[1], mode),
                              parse_scalar(parts[2], mode), parse_scalar(parts[3], mode));
}

std::string to_string(const BoundaryTraces& b) {
  return "(" + to_string(b.a()) + ", " + to_string(b.b()) + ", " + to_string(b.c()) + ", " +
         to_string(b.d()) + ")";
}

Scalar kappa(const BoundaryTraces& b, const TracePoint& p) {
  if (p.mode() != b.mode()) throw ModeError("kappa: boundary traces and point differ in mode");
  if (b.mode() == Mode::Exact) return Scalar(kernel::kappa(b.coeffs<Rational>(), p.as<Rational>()));
  return Scalar(kernel::kappa(b.coeffs<double>(), p.as<double>()));
}

// ------------------------------------------------------------- QuadraticSurd

namespace {

// sign(a + s·sqrt(r)), r >= 0, s in {-1, 0, 1}.
int sign_with_root(const Rational& a, int s, const Rational& r) {
  const int sa = sgn(a);
  if (s == 0 || sgn(r) == 0) return sa;
  if (sa == 0 || sa == s) return s;
  const int c = cmp(Rational(a * a), r);
  if (c > 0) return sa;
  if (c < 0) return s;
  return 0;
}

// sign(a + s1·sqrt(r1) + s2·sqrt(r2)).
int sign_with_two_roots(const Rational& a, int s1, const Rational& r1, int s2, const Rational& r2) {
  const int sx = sign_with_root(a, s1, r1);
  const int sy = sgn(r2) == 0 ? 0 : s2;
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sx == 0 ? sy : sx;
  // |a + s1·sqrt(r1)|² - r2 = a² + r1 - r2 + 2·a·s1·sqrt(r1)
  const Rational base = a * a + r1 - r2;
  const int cross_sign = sgn(a) * s1;
  const Rational cross_sq = 4 * a * a * r1;
  const int d = sign_with_root(base, cross_sign, cross_sq);
  if (d > 0) return sx;
  if (d < 0) return sy;
  return 0;
}

QuadraticSurd make_surd(Scalar rational_part, Scalar radicand, int root_sign) {
  if (radicand.sign() < 0) throw DomainError("negative radicand");
  if (radicand.is_exact()) {
    Rational root;
    if (rational_sqrt(radicand.rational(), root)) {
      Rational value = rational_part.rational() + root_sign * root;
      return {Scalar(std::move(value)), Scalar(Rational(0)), 0};
    }
  }
  return {std::move(rational_part), std::move(radicand), root_sign};
}

}  // namespace

double QuadraticSurd::to_double() const {
  return rational_part.to_double() + root_sign * std::sqrt(radicand.to_double());
}

std::optional<Scalar> QuadraticSurd::value() const {
  if (!rational_part.is_exact()) return Scalar(to_double());
  if (root_sign == 0 || radicand.is_zero()) return rational_part;
  Rational root;
  if (rational_sqrt(radicand.rational(), root)) return Scalar(Rational(rational_part.rational() + root_sign * root));
  return std::nullopt;
}

std::string QuadraticSurd::to_string() const {
  if (auto v = value()) return charvar::to_string(*v);
  std::string out = charvar::to_string(rational_part);
  out += root_sign < 0 ? "-sqrt(" : "+sqrt(";
  out += charvar::to_string(radicand);
  out += ")";
  return out;
}

int compare(const QuadraticSurd& lhs, const QuadraticSurd& rhs) {
  if (lhs.rational_part.mode() != rhs.rational_part.mode()) throw ModeError("compare: mixed modes");
  if (!lhs.rational_part.is_exact()) {
    const double a = lhs.to_double();
    const double b = rhs.to_double();
    const double tol = 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    if (std::abs(a - b) <= tol) return 0;
    return a < b ? -1 : 1;
  }
  const Rational diff = lhs.rational_part.rational() - rhs.rational_part.rational();
  return sign_with_two_roots(diff, lhs.root_sign, lhs.radicand.rational(), -rhs.root_sign,
                             rhs.radicand.rational());
}

PairInterval pair_interval(const Scalar& u, const Scalar& v) {
  if (u.mode() != v.mode()) throw ModeError("pair_interval: mixed modes");
  const Mode m = u.mode();
  const Scalar two = Scalar::from_int(2, m);
  const Scalar four = Scalar::from_int(4, m);
  const Scalar mid = u * v / two;
  const Scalar radicand = (u * u - four) * (v * v - four) / four;
  if (radicand.sign() < 0) throw DomainError("pair_interval: traces outside (-2, 2)");
  return {make_surd(mid, radicand, -1), make_surd(mid, radicand, +1)};
}

// ------------------------------------------------------------ classification

std::string_view to_string(ComponentClass c) {
  switch (c) {
    case ComponentClass::SU2: return "SU2";
    case ComponentClass::SL2R_compact: return "SL2R_compact";
    case ComponentClass::Degenerate: return "Degenerate";
  }
  return "?";
}

Classification classify(const BoundaryTraces& b, Axis axis) {
  const Scalar* first[2];
  const Scalar* second[2];
  switch (axis) {
    case Axis::X:
      first[0] = &b.a(), first[1] = &b.b(), second[0] = &b.c(), second[1] = &b.d();
      break;
    case Axis::Y:
      first[0] = &b.b(), first[1] = &b.c(), second[0] = &b.a(), second[1] = &b.d();
      break;
    default:
      first[0] = &b.c(), first[1] = &b.a(), second[0] = &b.b(), second[1] = &b.d();
      break;
  }
  const PairInterval p = pair_interval(*first[0], *first[1]);
  const PairInterval q = pair_interval(*second[0], *second[1]);

  Classification result{ComponentClass::Degenerate, std::nullopt, p, q};
  const int p_below_q = compare(p.hi, q.lo);
  const int q_below_p = compare(q.hi, p.lo);
  if (p_below_q < 0) {
    result.kind = ComponentClass::SL2R_compact;
    result.range = OpenInterval{p.hi, q.lo};
  } else if (q_below_p < 0) {
    result.kind = ComponentClass::SL2R_compact;
    result.range = OpenInterval{q.hi, p.lo};
  } else if (p_below_q == 0 || q_below_p == 0) {
    result.kind = ComponentClass::Degenerate;
  } else {
    result.kind = ComponentClass::SU2;
    result.range = OpenInterval{compare(p.lo, q.lo) >= 0 ? p.lo : q.lo,
                                compare(p.hi, q.hi) <= 0 ? p.hi : q.hi};
  }
  return result;
}

Classification classify(const BoundaryTraces& b) { return classify(b, Axis::X); }

// ----------------------------------------------------------------- level sets

std::string_view to_string(LevelSetShape s) {
  switch (s) {
    case LevelSetShape::Ellipse: return "ellipse";
    case LevelSetShape::Point: return "point";
    case LevelSetShape::Empty: return "empty";
  }
  return "?";
}

LevelSetShape LevelSetGeometry::shape() const {
  const int s = rhs.sign();
  if (s > 0) return LevelSetShape::Ellipse;
  if (s == 0) return LevelSetShape::Point;
  return LevelSetShape::Empty;
}

Scalar LevelSetGeometry::residual(const TracePoint& p) const {
  const auto [u, v] = slice_axes(axis);
  const Scalar sum = p[u] + p[v] - center_sum;
  const Scalar diff = p[u] - p[v] - center_diff;
  return weight_sum * sum * sum + weight_diff * diff * diff - rhs;
}

std::pair<double, double> LevelSetGeometry::semi_axes() const {
  const double r = std::max(0.0, rhs.to_double());
  return {std::sqrt(r / weight_sum.to_double()), std::sqrt(r / weight_diff.to_double())};
}

TracePoint LevelSetGeometry::point_at(double theta) const {
  const auto [sa, sd] = semi_axes();
  const double sum = center_sum.to_double() + sa * std::cos(theta);
  const double diff = center_diff.to_double() + sd * std::sin(theta);
  TracePoint p{Scalar(0.0), Scalar(0.0), Scalar(0.0)};
  const auto [u, v] = slice_axes(axis);
  p[axis] = Scalar(level.to_double());
  p[u] = Scalar((sum + diff) / 2);
  p[v] = Scalar((sum - diff) / 2);
  return p;
}

LevelSetGeometry level_set(const BoundaryTraces& b, Axis axis, const Scalar& level) {
  if (level.mode() != b.mode()) throw ModeError("level_set: level and boundary traces differ in mode");
  const Mode m = b.mode();
  const Scalar two = Scalar::from_int(2, m);
  const Scalar four = Scalar::from_int(4, m);
  if (!(level.abs() < two)) {
    throw DomainError("level " + to_string(level) + " outside the open interval (-2, 2)");
  }
  const auto [u, v] = slice_axes(axis);
  const Scalar& su = b.sigma(u);
  const Scalar& sv = b.sigma(v);

  LevelSetGeometry g{axis, level, {}, {}, {}, {}, {}};
  g.center_sum = (su + sv) / (two + level);
  g.center_diff = (su - sv) / (two - level);
  g.weight_sum = (two + level) / four;
  g.weight_diff = (two - level) / four;
  const Scalar constant = level * level - b.sigma(axis) * level + b.s_const();
  g.rhs = g.weight_sum * g.center_sum * g.center_sum + g.weight_diff * g.center_diff * g.center_diff - constant;
  return g;
}

// --------------------------------------------------------------------- lifts

std::vector<TracePoint> lift_to_surface(const BoundaryTraces& b, const Scalar& x, const Scalar& y) {
  if (x.mode() != b.mode() || y.mode() != b.mode()) throw ModeError("lift_to_surface: mixed modes");
  const Mode m = b.mode();
  // z² + p·z + q = 0
  const Scalar p = x * y - b.sigma_z();
  const Scalar q = x * x + y * y - b.sigma_x() * x - b.sigma_y() * y + b.s_const();
  const Scalar disc = p * p - Scalar::from_int(4, m) * q;
  const Scalar two = Scalar::from_int(2, m);

  std::vector<TracePoint> out;
  if (disc.sign() < 0) return out;
  if (disc.is_zero()) {
    out.push_back({x, y, -p / two});
    return out;
  }
  Scalar root;
  if (m == Mode::Exact) {
    Rational r;
    if (!rational_sqrt(disc.rational(), r)) {
      throw NeedsFloatMode("lift_to_surface: discriminant " + to_string(disc) + " is not a rational square");
    }
    root = Scalar(std::move(r));
  } else {
    root = Scalar(std::sqrt(disc.real_value()));
  }
  out.push_back({x, y, (-p - root) / two});
  out.push_back({x, y, (-p + root) / two});
  return out;
}

std::vector<TracePoint> surface_sample(const BoundaryTraces& b, std::size_t m, std::size_t k) {
  const Classification cls = classify(b);
  if (cls.kind == ComponentClass::Degenerate || !cls.range) {
    throw DomainError("surface_sample: degenerate configuration has no sample range");
  }
  std::vector<TracePoint> out;
  if (m == 0 || k == 0) return out;
  out.reserve(m * k);
  const BoundaryTraces bf = b.in_mode(Mode::Float);
  const double lo = cls.range->lo.to_double();
  const double hi = cls.range->hi.to_double();
  for (std::size_t i = 0; i < m; ++i) {
    const double x = lo + (static_cast<double>(i) + 0.5) * (hi - lo) / static_cast<double>(m);
    const LevelSetGeometry g = level_set(bf, Axis::X, Scalar(x));
    if (g.shape() != LevelSetShape::Ellipse) continue;
    for (std::size_t j = 0; j < k; ++j) {
      const double theta = 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(k);
      out.push_back(g.point_at(theta));
    }
  }
  return out;
}

}  // namespace charvar
