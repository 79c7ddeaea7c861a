#include "charvar/twists.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace charvar {

TwistGenerator TwistGenerator::make(Axis axis, int power) {
  if (power != 1 && power != -1) throw DomainError("twist generator power must be +1 or -1");
  return {axis, power};
}

char TwistGenerator::letter() const {
  const char upper = "XYZ"[static_cast<int>(axis)];
  return power > 0 ? upper : static_cast<char>(upper - 'A' + 'a');
}

const std::array<TwistGenerator, 6>& all_generators() {
  static const std::array<TwistGenerator, 6> gens{{{Axis::X, 1},
                                                   {Axis::X, -1},
                                                   {Axis::Y, 1},
                                                   {Axis::Y, -1},
                                                   {Axis::Z, 1},
                                                   {Axis::Z, -1}}};
  return gens;
}

TwistWord TwistWord::parse(std::string_view text) {
  TwistWord w;
  for (const char ch : text) {
    switch (ch) {
      case 'X': w.push_back({Axis::X, 1}); break;
      case 'x': w.push_back({Axis::X, -1}); break;
      case 'Y': w.push_back({Axis::Y, 1}); break;
      case 'y': w.push_back({Axis::Y, -1}); break;
      case 'Z': w.push_back({Axis::Z, 1}); break;
      case 'z': w.push_back({Axis::Z, -1}); break;
      case ' ':
      case ',':
      case '.': break;
      default: throw DomainError(std::string("unknown twist letter '") + ch + "'");
    }
  }
  return w;
}

TwistWord TwistWord::inverse() const {
  std::vector<TwistGenerator> out(letters_.rbegin(), letters_.rend());
  for (auto& g : out) g = g.inverse();
  return TwistWord(std::move(out));
}

TwistWord TwistWord::free_reduced() const {
  std::vector<TwistGenerator> stack;
  for (const auto& g : letters_) {
    if (!stack.empty() && stack.back() == g.inverse()) {
      stack.pop_back();
    } else {
      stack.push_back(g);
    }
  }
  return TwistWord(std::move(stack));
}

std::string TwistWord::to_string() const {
  std::string s;
  s.reserve(letters_.size());
  for (const auto& g : letters_) s += g.letter();
  return s;
}

TwistWord operator*(const TwistWord& lhs, const TwistWord& rhs) {
  std::vector<TwistGenerator> out = lhs.letters_;
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return TwistWord(std::move(out));
}

namespace {

void check_modes(const BoundaryTraces& b, const TracePoint& p) {
  if (p.mode() != b.mode()) throw ModeError("boundary traces and point differ in mode");
}

}  // namespace

TracePoint apply_generator(const BoundaryTraces& b, const TracePoint& p, TwistGenerator g) {
  check_modes(b, p);
  if (b.mode() == Mode::Exact) {
    auto q = p.as<Rational>();
    kernel::twist(b.coeffs<Rational>(), q, g.axis, g.power);
    return TracePoint::from(q);
  }
  auto q = p.as<double>();
  kernel::twist(b.coeffs<double>(), q, g.axis, g.power);
  return TracePoint::from(q);
}

TracePoint apply_word(const BoundaryTraces& b, const TracePoint& p, const TwistWord& w) {
  check_modes(b, p);
  if (b.mode() == Mode::Exact) {
    const auto k = b.coeffs<Rational>();
    auto q = p.as<Rational>();
    for (const auto& g : w.letters()) kernel::twist(k, q, g.axis, g.power);
    return TracePoint::from(q);
  }
  const auto k = b.coeffs<double>();
  auto q = p.as<double>();
  for (const auto& g : w.letters()) kernel::twist(k, q, g.axis, g.power);
  return TracePoint::from(q);
}

TracePoint vieta_involution(const BoundaryTraces& b, const TracePoint& p, Axis variable) {
  check_modes(b, p);
  if (b.mode() == Mode::Exact) {
    auto q = p.as<Rational>();
    kernel::vieta(b.coeffs<Rational>(), q, variable);
    return TracePoint::from(q);
  }
  auto q = p.as<double>();
  kernel::vieta(b.coeffs<double>(), q, variable);
  return TracePoint::from(q);
}

bool is_fixed_point(const BoundaryTraces& b, const TracePoint& p, Axis axis) {
  const TracePoint q = apply_generator(b, p, {axis, 1});
  if (b.mode() == Mode::Exact) return q == p;
  const double scale = std::max({1.0, std::abs(p.x.real_value()), std::abs(p.y.real_value()),
                                 std::abs(p.z.real_value())});
  for (const Axis a : kAxes) {
    if (std::abs(q[a].real_value() - p[a].real_value()) > 1e-12 * scale) return false;
  }
  return true;
}

double rotation_angle(const Scalar& level) {
  const double l = level.to_double();
  if (!(level.abs() < Scalar::from_int(2, level.mode()))) {
    throw DomainError("rotation_angle: level " + to_string(level) + " outside (-2, 2)");
  }
  return 2 * std::acos(l / 2);
}

RotationFrame to_rotation_frame(const BoundaryTraces& b, const TracePoint& p, Axis axis) {
  if (b.mode() != Mode::Float || p.mode() != Mode::Float) {
    throw ModeError("to_rotation_frame requires float mode");
  }
  const LevelSetGeometry g = level_set(b, axis, p[axis]);
  if (g.shape() != LevelSetShape::Ellipse) {
    throw DomainError("to_rotation_frame: level set is not a nondegenerate ellipse");
  }
  const auto [ua, va] = slice_axes(axis);
  const double sum = p[ua].real_value() + p[va].real_value();
  const double diff = p[ua].real_value() - p[va].real_value();
  RotationFrame f{};
  f.axis = axis;
  f.level = p[axis].real_value();
  f.u = std::sqrt(g.weight_sum.real_value()) * (sum - g.center_sum.real_value());
  f.v = std::sqrt(g.weight_diff.real_value()) * (diff - g.center_diff.real_value());
  f.radius = std::hypot(f.u, f.v);
  f.angle = std::atan2(f.v, f.u);
  if (f.angle < 0) f.angle += 2 * std::numbers::pi;
  return f;
}

double angular_step(const RotationFrame& from, const RotationFrame& to) {
  double d = to.angle - from.angle;
  d = std::fmod(d, 2 * std::numbers::pi);
  if (d < 0) d += 2 * std::numbers::pi;
  return d;
}

}  // namespace charvar
