#pragma once

#include <array>
#include <string_view>
#include <utility>

namespace charvar {

/// Interior trace coordinate: X = tr(AB), Y = tr(BC), Z = tr(CA).
enum class Axis { X, Y, Z };

inline constexpr std::array<Axis, 3> kAxes{Axis::X, Axis::Y, Axis::Z};

constexpr std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::X: return "X";
    case Axis::Y: return "Y";
    case Axis::Z: return "Z";
  }
  return "?";
}

/// The two coordinates spanning the level sets of `axis`, in cyclic order
/// (X -> (y, z), Y -> (z, x), Z -> (x, y)).
constexpr std::pair<Axis, Axis> slice_axes(Axis axis) {
  switch (axis) {
    case Axis::X: return {Axis::Y, Axis::Z};
    case Axis::Y: return {Axis::Z, Axis::X};
    case Axis::Z: return {Axis::X, Axis::Y};
  }
  return {Axis::Y, Axis::Z};
}

}  // namespace charvar
