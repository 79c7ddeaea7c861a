#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "charvar/surface.hpp"

namespace charvar {

/// tau_axis^power with power = +1 or -1.
struct TwistGenerator {
  Axis axis = Axis::X;
  int power = 1;

  /// Throws DomainError unless power is +1 or -1.
  static TwistGenerator make(Axis axis, int power);
  TwistGenerator inverse() const { return {axis, -power}; }
  /// Upper case letter for the forward twist, lower case for its inverse.
  char letter() const;

  friend bool operator==(const TwistGenerator&, const TwistGenerator&) = default;
};

/// The six generators tau_X, tau_X^-1, tau_Y, tau_Y^-1, tau_Z, tau_Z^-1.
const std::array<TwistGenerator, 6>& all_generators();

/// A word in the twist generators, applied left to right.
class TwistWord {
 public:
  TwistWord() = default;
  explicit TwistWord(std::vector<TwistGenerator> letters) : letters_(std::move(letters)) {}

  /// Letters X, Y, Z (forward) and x, y, z (inverse); spaces, commas and '.' are ignored.
  static TwistWord parse(std::string_view text);

  const std::vector<TwistGenerator>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  void push_back(TwistGenerator g) { letters_.push_back(g); }
  TwistWord inverse() const;
  /// Cancels adjacent inverse pairs until none remain.
  TwistWord free_reduced() const;
  std::string to_string() const;

  friend TwistWord operator*(const TwistWord& lhs, const TwistWord& rhs);
  friend bool operator==(const TwistWord&, const TwistWord&) = default;

 private:
  std::vector<TwistGenerator> letters_;
};

/*
 * Applies one Dehn twist in trace coordinates. tau_X replaces z by
 * sigma_z - xy - z and then y by sigma_y - x·z' - y; tau_Y and tau_Z are the
 * cyclic analogues. The inverse performs the two substitutions in reverse
 * order. kappa is preserved for every point of R³, not only surface points.
 */
TracePoint apply_generator(const BoundaryTraces& b, const TracePoint& p, TwistGenerator g);

TracePoint apply_word(const BoundaryTraces& b, const TracePoint& p, const TwistWord& w);

/// Replaces one coordinate by sigma - (product of the other two) - itself.
TracePoint vieta_involution(const BoundaryTraces& b, const TracePoint& p, Axis variable);

/// True when the twist about `axis` fixes p (the centre of its slice).
bool is_fixed_point(const BoundaryTraces& b, const TracePoint& p, Axis axis);

/// 2·arccos(level/2) in (0, 2π). Throws DomainError when |level| >= 2.
double rotation_angle(const Scalar& level);

/// Coordinates in which the twist about `axis` acts as a Euclidean rotation:
/// u = sqrt(weight_sum)·(sum - center_sum), v = sqrt(weight_diff)·(diff - center_diff).
struct RotationFrame {
  Axis axis;
  double level;
  double u, v;
  double radius;
  /// atan2(v, u) mapped to [0, 2π).
  double angle;
};

/// Float-mode points only; throws DomainError when the slice is not a
/// nondegenerate ellipse (rhs <= 0) or |level| >= 2.
RotationFrame to_rotation_frame(const BoundaryTraces& b, const TracePoint& p, Axis axis);

/// Angle from `from` to `to` measured counter-clockwise, in [0, 2π).
double angular_step(const RotationFrame& from, const RotationFrame& to);

}  // namespace charvar
