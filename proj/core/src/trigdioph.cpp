#include "charvar/trigdioph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

namespace charvar {

namespace {

// Ceiling for internal evaluations (search confirmation, classification),
// where the combined conductor of four angles with q <= 30 can exceed kMaxConductor.
constexpr std::uint64_t kInternalConductorLimit = 2'000'000;

std::uint64_t lcm_checked(std::uint64_t a, std::uint64_t b, std::uint64_t limit) {
  const std::uint64_t g = std::gcd(a, b);
  const std::uint64_t l = a / g * b;
  if (l > limit) throw DomainError("cyclotomic conductor " + std::to_string(l) + " exceeds " + std::to_string(limit));
  return l;
}

std::uint64_t conductor_limited(const CJRelation& rel, std::uint64_t limit) {
  std::uint64_t l = 1;
  for (const auto& t : rel.terms) l = lcm_checked(l, static_cast<std::uint64_t>(2 * t.angle.den()), limit);
  return l;
}

CycloElement eval_in(const CJRelation& rel, std::uint64_t conductor) {
  Rational rhs = -rel.rhs;
  rhs.canonicalize();
  CycloElement out = CycloElement::from_rational(conductor, rhs);
  for (const auto& t : rel.terms) {
    Rational c = t.coeff;
    c.canonicalize();
    out += CycloElement::cos_of(conductor, t.angle) * c;
  }
  return out;
}

CycloElement eval_limited(const CJRelation& rel, std::uint64_t limit) {
  return eval_in(rel, conductor_limited(rel, limit));
}

// rank of the classes of cos(angle_i) modulo Q
std::size_t irrational_rank(const std::vector<CJTerm>& terms) {
  CJRelation probe{terms, Rational(0)};
  const std::uint64_t l = conductor_limited(probe, kInternalConductorLimit);
  std::vector<CycloElement> parts;
  parts.reserve(terms.size());
  for (const auto& t : terms) parts.push_back(CycloElement::cos_of(l, t.angle).irrational_part());
  return rank_over_q(parts);
}

std::string term_string(const Rational& c, const AngleFraction& a) {
  std::string angle = a.num() == 1 ? "pi" : std::to_string(a.num()) + "pi";
  if (a.den() != 1) angle += "/" + std::to_string(a.den());
  if (c == 1) return "cos(" + angle + ")";
  return c.get_str() + "*cos(" + angle + ")";
}

// rel = k·ref with the same sorted angles and k != 0
std::optional<Rational> proportional(const CJRelation& rel, const CJRelation& ref) {
  if (rel.terms.size() != ref.terms.size() || rel.terms.empty()) return std::nullopt;
  const Rational k = rel.terms[0].coeff / ref.terms[0].coeff;
  for (std::size_t i = 0; i < rel.terms.size(); ++i) {
    if (rel.terms[i].angle != ref.terms[i].angle) return std::nullopt;
    if (rel.terms[i].coeff != k * ref.terms[i].coeff) return std::nullopt;
  }
  if (rel.rhs != k * ref.rhs) return std::nullopt;
  return k;
}

CJTerm term(long c, std::int64_t p, std::int64_t q) { return {Rational(c), AngleFraction::make(p, q)}; }

}  // namespace

std::string CJRelation::to_string() const {
  std::ostringstream os;
  if (terms.empty()) os << "0";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Rational& c = terms[i].coeff;
    if (i == 0) {
      os << term_string(c, terms[i].angle);
    } else if (sgn(c) < 0) {
      os << " - " << term_string(Rational(-c), terms[i].angle);
    } else {
      os << " + " << term_string(c, terms[i].angle);
    }
  }
  os << " = " << rhs.get_str();
  return os.str();
}

std::uint64_t conductor_of(const CJRelation& rel) {
  return conductor_limited(rel, std::numeric_limits<std::uint64_t>::max() / 64);
}

CJRelation normalize(const CJRelation& rel) {
  CJRelation out;
  out.rhs = rel.rhs;
  out.rhs.canonicalize();
  std::map<AngleFraction, Rational> merged;
  for (const auto& t : rel.terms) {
    std::int64_t p = t.angle.num();
    const std::int64_t q = t.angle.den();
    Rational c = t.coeff;
    c.canonicalize();
    if (p > q) p = 2 * q - p;  // cos(2π - t) = cos(t)
    if (2 * p > q) {           // cos(π - t) = -cos(t)
      p = q - p;
      c = -c;
    }
    if (p == 0) {
      out.rhs -= c;
      continue;
    }
    if (2 * p == q) continue;
    merged[AngleFraction::make(p, q)] += c;
  }
  for (const auto& [angle, c] : merged) {
    if (sgn(c) != 0) out.terms.push_back({c, angle});
  }
  return out;
}

CycloElement eval_exact(const CJRelation& rel) { return eval_limited(rel, kMaxConductor); }

std::optional<Rational> is_rational_relation(const CJRelation& rel) {
  CJRelation lhs{rel.terms, Rational(0)};
  return eval_exact(lhs).rational_value();
}

std::string_view to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::Listed:
      return "listed";
    case FamilyKind::Reducible:
      return "reducible";
    case FamilyKind::Trivial:
      return "trivial";
    case FamilyKind::Unclassified:
      return "unclassified";
  }
  return "?";
}

std::string FamilyMatch::describe() const {
  switch (kind) {
    case FamilyKind::Listed: {
      std::string s = "family #" + std::to_string(family);
      if (t) s += " (t = " + t->to_string() + "*pi)";
      if (scale != 1) s += " scaled by " + scale.get_str();
      return s;
    }
    case FamilyKind::Reducible:
      return "reducible (a proper subset is rational)";
    case FamilyKind::Trivial:
      return "trivial (no terms)";
    case FamilyKind::Unclassified:
      return "unclassified";
  }
  return "?";
}

const std::vector<ListedIdentity>& fixed_identities() {
  static const std::vector<ListedIdentity> list = [] {
    const Rational half(1, 2);
    std::vector<ListedIdentity> v;
    v.push_back({1, {{term(1, 1, 3)}, half}});
    v.push_back({3, {{term(1, 1, 5), term(-1, 2, 5)}, half}});
    v.push_back({4, {{term(1, 1, 7), term(-1, 2, 7), term(1, 3, 7)}, half}});
    v.push_back({5, {{term(1, 1, 5), term(-1, 1, 15), term(1, 4, 15)}, half}});
    v.push_back({6, {{term(-1, 2, 5), term(1, 2, 15), term(-1, 7, 15)}, half}});
    v.push_back({7, {{term(1, 1, 7), term(1, 3, 7), term(-1, 1, 21), term(1, 8, 21)}, half}});
    v.push_back({8, {{term(1, 1, 7), term(-1, 2, 7), term(1, 2, 21), term(-1, 5, 21)}, half}});
    v.push_back({9, {{term(-1, 2, 7), term(1, 3, 7), term(1, 4, 21), term(1, 10, 21)}, half}});
    v.push_back({10, {{term(-1, 1, 15), term(1, 2, 15), term(1, 4, 15), term(-1, 7, 15)}, half}});
    return v;
  }();
  return list;
}

CJRelation t_family_relation(const AngleFraction& t) {
  const AngleFraction third = AngleFraction::make(1, 3);
  return {{{Rational(1), t + third}, {Rational(1), third - t}, {Rational(-1), t}}, Rational(0)};
}

FamilyMatch match_family(const CJRelation& rel) {
  const CJRelation n = normalize(rel);
  if (!eval_limited(n, kInternalConductorLimit).is_zero()) {
    throw DomainError("match_family: relation is not satisfied exactly: " + rel.to_string());
  }
  FamilyMatch m;
  if (n.terms.empty()) {
    m.kind = FamilyKind::Trivial;
    return m;
  }
  if (irrational_rank(n.terms) + 1 < n.terms.size()) {
    m.kind = FamilyKind::Reducible;
    return m;
  }
  for (const auto& entry : fixed_identities()) {
    if (auto k = proportional(n, normalize(entry.relation))) {
      m.kind = FamilyKind::Listed;
      m.family = entry.index;
      m.scale = *k;
      return m;
    }
  }
  // Sorted angles t < π/3 - t < π/3 + t, which forces 0 < t < π/6.
  if (n.terms.size() == 3) {
    const AngleFraction& t = n.terms[0].angle;
    if (t + n.terms[1].angle == AngleFraction::make(1, 3) && n.terms[2].angle == t + AngleFraction::make(1, 3)) {
      if (auto k = proportional(n, normalize(t_family_relation(t)))) {
        m.kind = FamilyKind::Listed;
        m.family = 2;
        m.scale = *k;
        m.t = t;
        return m;
      }
    }
  }
  m.kind = FamilyKind::Unclassified;
  return m;
}

// ------------------------------------------------------------- bounded_search

namespace {

constexpr std::size_t kConjugates = 9;

struct SearchAngle {
  AngleFraction angle;
  std::array<double, kConjugates> images;  // cos(π·p·k/q) for the Galois exponents k
};

std::vector<std::int64_t> galois_exponents(int max_q) {
  std::vector<std::int64_t> ks{1};
  for (std::int64_t n = max_q + 1; ks.size() < kConjugates; ++n) {
    bool prime = n >= 2;
    for (std::int64_t d = 2; d * d <= n && prime; ++d) prime = n % d != 0;
    if (prime) ks.push_back(n);
  }
  return ks;
}

struct Searcher {
  const std::vector<SearchAngle>& angles;
  const std::vector<Rational>& coeffs;
  std::vector<double> coeff_values;
  std::size_t max_terms;

  std::map<std::string, FoundRelation> found;  // canonical key -> representative
  std::vector<std::string> order;

  std::vector<std::size_t> chosen;
  std::vector<std::size_t> chosen_coeffs;

  void visit_subset() {
    chosen_coeffs.assign(chosen.size(), 0);
    visit_coeff(0);
  }

  void visit_coeff(std::size_t depth) {
    if (depth == chosen.size()) {
      test_candidate();
      return;
    }
    for (std::size_t c = 0; c < coeffs.size(); ++c) {
      chosen_coeffs[depth] = c;
      visit_coeff(depth + 1);
    }
  }

  void test_candidate() {
    std::array<double, kConjugates> sums{};
    double scale = 1.0;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      const double c = coeff_values[chosen_coeffs[i]];
      scale += std::abs(c);
      const auto& img = angles[chosen[i]].images;
      for (std::size_t k = 0; k < kConjugates; ++k) sums[k] += c * img[k];
    }
    const double tol = 1e-9 * scale;
    for (std::size_t k = 1; k < kConjugates; ++k) {
      if (std::abs(sums[k] - sums[0]) > tol) return;
    }
    CJRelation rel;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      rel.terms.push_back({coeffs[chosen_coeffs[i]], angles[chosen[i]].angle});
    }
    if (sgn(rel.terms[0].coeff) < 0) {
      for (auto& t : rel.terms) t.coeff = -t.coeff;
    }
    const Rational first = rel.terms[0].coeff;
    std::string key;
    for (const auto& t : rel.terms) key += t.angle.to_string() + ":" + Rational(t.coeff / first).get_str() + ";";
    if (found.contains(key)) return;

    const auto value = eval_limited(rel, kInternalConductorLimit).rational_value();
    if (!value) return;
    rel.rhs = *value;
    if (irrational_rank(rel.terms) + 1 != rel.terms.size()) return;
    FoundRelation f{rel, match_family(rel)};
    found.emplace(key, std::move(f));
    order.push_back(key);
  }

  void choose(std::size_t start) {
    if (!chosen.empty()) visit_subset();
    if (chosen.size() == max_terms) return;
    for (std::size_t i = start; i < angles.size(); ++i) {
      chosen.push_back(i);
      choose(i + 1);
      chosen.pop_back();
    }
  }
};

}  // namespace

std::vector<FoundRelation> bounded_search(const SearchOptions& options) {
  if (options.max_q < 1 || options.max_q > 30) throw DomainError("bounded_search: max_q must be in [1, 30]");
  if (options.max_terms < 1 || options.max_terms > 4) throw DomainError("bounded_search: max_terms must be in [1, 4]");

  std::vector<Rational> coeffs;
  for (const auto& c : options.coeffs) {
    if (sgn(c) != 0 && std::find(coeffs.begin(), coeffs.end(), c) == coeffs.end()) coeffs.push_back(c);
  }
  if (coeffs.empty()) throw DomainError("bounded_search: empty coefficient set");

  const auto ks = galois_exponents(options.max_q);
  std::set<AngleFraction> unique;
  for (std::int64_t q = 1; q <= options.max_q; ++q) {
    for (std::int64_t p = 1; 2 * p < q; ++p) unique.insert(AngleFraction::make(p, q));
  }
  std::vector<SearchAngle> angles;
  for (const auto& a : unique) {
    SearchAngle s{a, {}};
    for (std::size_t k = 0; k < kConjugates; ++k) {
      // reduce p·k mod 2q before converting, to keep the argument small
      const std::int64_t e = (a.num() * ks[k]) % (2 * a.den());
      s.images[k] = std::cos(std::numbers::pi * static_cast<double>(e) / static_cast<double>(a.den()));
    }
    angles.push_back(s);
  }

  Searcher searcher{angles, coeffs, {}, static_cast<std::size_t>(options.max_terms), {}, {}, {}, {}};
  for (const auto& c : coeffs) searcher.coeff_values.push_back(c.get_d());
  searcher.choose(0);

  std::vector<FoundRelation> out;
  out.reserve(searcher.order.size());
  for (const auto& key : searcher.order) out.push_back(std::move(searcher.found.at(key)));
  return out;
}

// -------------------------------------------------------------------- eqcos

EqCosResult eqcos_residual(const BoundaryTraces& b, const EqCosAngles& angles, Axis moved) {
  if (b.mode() != Mode::Exact) throw ModeError("eqcos_residual: boundary traces must be exact");
  const auto theta = [&](Axis a) -> const AngleFraction& {
    switch (a) {
      case Axis::X:
        return angles.theta_x;
      case Axis::Y:
        return angles.theta_y;
      case Axis::Z:
        break;
    }
    return angles.theta_z;
  };
  const auto [u, v] = slice_axes(moved);
  const AngleFraction& tu = theta(u);
  const AngleFraction& tv = theta(v);
  const AngleFraction& ta = theta(moved);
  const AngleFraction& tm = angles.theta_moved;
  const Rational sigma = b.sigma(moved).rational();

  CJRelation eq{{{Rational(1), tm}, {Rational(1), tu + tv}, {Rational(1), tu - tv}, {Rational(1), ta}},
                Rational(sigma / 2)};
  const std::uint64_t l = conductor_limited(eq, kMaxConductor);
  EqCosResult r{eval_in(eq, l), false};

  const auto two_cos = [&](const AngleFraction& a) { return CycloElement::cos_of(l, a) * Rational(2); };
  const CycloElement lhs = two_cos(tm);
  const CycloElement rhs = CycloElement::from_rational(l, sigma) - two_cos(tu) * two_cos(tv) - two_cos(ta);
  r.trace_identity_holds = lhs == rhs;
  if (r.trace_identity_holds != r.residual.is_zero()) {
    throw InternalCheckFailure("eqcos_residual: residual and trace identity disagree");
  }
  return r;
}

}  // namespace charvar
