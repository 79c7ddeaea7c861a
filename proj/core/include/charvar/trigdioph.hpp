#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "charvar/angle.hpp"
#include "charvar/cyclotomic.hpp"
#include "charvar/surface.hpp"

namespace charvar {

/// coeff·cos(angle)
struct CJTerm {
  Rational coeff;
  AngleFraction angle;
};

/// Σ coeff_i·cos(angle_i) = rhs
struct CJRelation {
  std::vector<CJTerm> terms;
  Rational rhs;

  std::string to_string() const;
};

/// Largest conductor eval_exact will build.
inline constexpr std::uint64_t kMaxConductor = 10000;

/// lcm of 2q over the angles π·p/q of the relation (1 for no terms).
std::uint64_t conductor_of(const CJRelation& rel);

/*
 * Rewrites every term with an angle in [0, π/2] using cos(2π - t) = cos(t)
 * and cos(π - t) = -cos(t), folds cos(0) into the right side, drops cos(π/2),
 * merges equal angles and removes zero coefficients. Terms come out sorted by
 * angle; the value of Σ - rhs is unchanged.
 */
CJRelation normalize(const CJRelation& rel);

/// Σ coeff·cos(angle) - rhs in Q(ζ_L). Throws DomainError when L > kMaxConductor.
CycloElement eval_exact(const CJRelation& rel);

/// The value of Σ coeff·cos(angle) when it is rational (rhs is ignored).
std::optional<Rational> is_rational_relation(const CJRelation& rel);

enum class FamilyKind {
  /// Proportional to entry `family` of the classification list.
  Listed,
  /// A proper subset of the angles already admits a rational combination.
  Reducible,
  /// No terms left (0 = 0).
  Trivial,
  /// Minimal but matching no listed entry (not expected for <= 4 terms).
  Unclassified,
};

std::string_view to_string(FamilyKind k);

struct FamilyMatch {
  FamilyKind kind = FamilyKind::Unclassified;
  /// 1-based index into the list; 2 is the t-parameterised family.
  int family = 0;
  /// rel = scale · listed entry.
  Rational scale;
  /// The parameter of family 2.
  std::optional<AngleFraction> t;

  std::string describe() const;
};

/*
 * Classifies a rationally valued relation against the list of minimal
 * rational cosine relations on at most four angles in (0, π/2):
 *
 *   1  cos(π/3) = 1/2
 *   2  cos(t+π/3) + cos(π/3-t) - cos(t) = 0,  0 < t < π/6
 *   3  cos(π/5) - cos(2π/5) = 1/2
 *   4  cos(π/7) - cos(2π/7) + cos(3π/7) = 1/2
 *   5  cos(π/5) - cos(π/15) + cos(4π/15) = 1/2
 *   6  -cos(2π/5) + cos(2π/15) - cos(7π/15) = 1/2
 *   7  cos(π/7) + cos(3π/7) - cos(π/21) + cos(8π/21) = 1/2
 *   8  cos(π/7) - cos(2π/7) + cos(2π/21) - cos(5π/21) = 1/2
 *   9  -cos(2π/7) + cos(3π/7) + cos(4π/21) + cos(10π/21) = 1/2
 *   10 -cos(π/15) + cos(2π/15) + cos(4π/15) - cos(7π/15) = 1/2
 *
 * The relation is normalized first. Throws DomainError when Σ - rhs is not
 * exactly zero.
 */
FamilyMatch match_family(const CJRelation& rel);

struct ListedIdentity {
  int index;
  CJRelation relation;
};

/// Entries 1 and 3..10 of the list above, in order.
const std::vector<ListedIdentity>& fixed_identities();

/// Entry 2 at parameter t (0 < t < π/6 for a member of the family).
CJRelation t_family_relation(const AngleFraction& t);

struct SearchOptions {
  int max_q = 7;
  int max_terms = 4;
  std::vector<Rational> coeffs{Rational(1), Rational(-1), Rational(1, 2), Rational(-1, 2), Rational(2),
                               Rational(-2)};
};

struct FoundRelation {
  CJRelation relation;
  FamilyMatch match;
};

/*
 * All minimal rational relations Σ c_i·cos(πp_i/q_i) = E with distinct angles
 * in (0, π/2), q_i <= max_q and c_i from the coefficient set, one
 * representative per proportionality class (first coefficient positive).
 * Candidates are screened by comparing the combination with its images under
 * Galois automorphisms ζ -> ζ^k (a rational value is fixed by all of them)
 * and then confirmed in exact cyclotomic arithmetic. Throws DomainError when
 * max_q > 30 or max_terms > 4.
 */
std::vector<FoundRelation> bounded_search(const SearchOptions& options);

/// Half-angles θ_x, θ_y, θ_z of a trace point and θ' of the moved coordinate
/// after the twist, all as rational multiples of π.
struct EqCosAngles {
  AngleFraction theta_x, theta_y, theta_z, theta_moved;
};

struct EqCosResult {
  /// cos θ' + cos(θ_u+θ_v) + cos(θ_u-θ_v) + cos θ_axis - sigma_axis/2
  CycloElement residual;
  /// 2cos θ' == sigma_axis - (2cos θ_u)(2cos θ_v) - 2cos θ_axis, checked exactly.
  bool trace_identity_holds;
};

/// The cosine equation satisfied by a finite orbit: `moved` is the coordinate
/// changed by the twist (X for tau_Y moving x, with (u, v) = (y, z)).
/// Exact traces only.
EqCosResult eqcos_residual(const BoundaryTraces& b, const EqCosAngles& angles, Axis moved = Axis::X);

}  // namespace charvar
