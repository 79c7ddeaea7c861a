#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/math/constants/constants.hpp>

#include <random>

#include "charvar/orbits.hpp"
#include "charvar/trigdioph.hpp"

using namespace charvar;
using boost::multiprecision::cpp_bin_float_50;

namespace {

CJTerm term(long c, std::int64_t p, std::int64_t q) { return {Rational(c), AngleFraction::make(p, q)}; }
CJTerm term(const Rational& c, std::int64_t p, std::int64_t q) { return {c, AngleFraction::make(p, q)}; }

cpp_bin_float_50 to_mp(const Rational& r) {
  return cpp_bin_float_50(r.get_num().get_str()) / cpp_bin_float_50(r.get_den().get_str());
}

// Σ c·cos(πp/q) - rhs straight from the definition
cpp_bin_float_50 direct_value(const CJRelation& rel) {
  const cpp_bin_float_50 pi = boost::math::constants::pi<cpp_bin_float_50>();
  cpp_bin_float_50 v = -to_mp(rel.rhs);
  for (const auto& t : rel.terms) {
    v += to_mp(t.coeff) * cos(pi * t.angle.num() / t.angle.den());
  }
  return v;
}

// Σ coord_i · ζ_L^{e_i}, split into real and imaginary parts
std::pair<cpp_bin_float_50, cpp_bin_float_50> element_value(const CycloElement& e) {
  const cpp_bin_float_50 pi = boost::math::constants::pi<cpp_bin_float_50>();
  cpp_bin_float_50 re = 0, im = 0;
  for (const auto& [idx, c] : e.coordinates()) {
    const cpp_bin_float_50 arg = 2 * pi * e.field().basis_exponent(idx) / e.conductor();
    re += to_mp(c) * cos(arg);
    im += to_mp(c) * sin(arg);
  }
  return {re, im};
}

CJRelation random_relation(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(1, 4), qd(1, 24), cd(-6, 6), dd(1, 4);
  CJRelation rel;
  for (int i = nterms(rng); i > 0; --i) {
    const int q = qd(rng);
    std::uniform_int_distribution<int> pd(0, 2 * q - 1);
    rel.terms.push_back(term(Rational(cd(rng), dd(rng)), pd(rng), q));
  }
  rel.rhs = Rational(cd(rng), dd(rng));
  return rel;
}

}  // namespace

TEST_CASE("normalize examples") {
  const auto a = normalize({{term(1, 2, 3)}, Rational(0)});
  REQUIRE(a.terms.size() == 1);
  CHECK(a.terms[0].coeff == -1);
  CHECK(a.terms[0].angle == AngleFraction::make(1, 3));

  const auto b = normalize({{term(1, 0, 1), term(1, 1, 5)}, Rational(3)});
  CHECK(b.rhs == 2);
  REQUIRE(b.terms.size() == 1);

  const auto c = normalize({{term(1, 3, 5), term(1, 2, 5)}, Rational(1, 7)});
  CHECK(c.terms.empty());
  CHECK(c.rhs == Rational(1, 7));
  CHECK(eval_exact(c).embed(10) == eval_exact({{term(1, 3, 5), term(1, 2, 5)}, Rational(1, 7)}));

  // π/2 drops, reflections land in [0, π/2], terms come out sorted
  const auto d = normalize({{term(2, 1, 2), term(1, 7, 4), term(1, 5, 6), term(1, 1, 6)}, Rational(0)});
  REQUIRE(d.terms.size() == 1);
  CHECK(d.terms[0].angle == AngleFraction::make(1, 4));
  CHECK(d.terms[0].coeff == 1);
}

TEST_CASE("normalize preserves the exact value") {
  std::mt19937_64 rng(1);
  int compared = 0;
  for (int i = 0; i < 300; ++i) {
    const auto rel = random_relation(rng);
    const auto n = normalize(rel);
    for (const auto& t : n.terms) {
      CHECK(2 * t.angle.num() < t.angle.den());
      CHECK(t.angle.num() > 0);
      CHECK(t.coeff != 0);
    }
    for (std::size_t k = 1; k < n.terms.size(); ++k) CHECK(n.terms[k - 1].angle < n.terms[k].angle);
    if (conductor_of(rel) > kMaxConductor) continue;
    ++compared;
    CHECK(eval_exact(n).embed(conductor_of(rel)) == eval_exact(rel));
  }
  CHECK(compared > 200);
}

TEST_CASE("eval_exact examples and conductor guard") {
  CHECK(eval_exact({{term(1, 1, 3)}, Rational(1, 2)}).is_zero());
  CHECK(eval_exact({{term(1, 1, 5), term(-1, 2, 5)}, Rational(1, 2)}).is_zero());
  const auto e = eval_exact({{term(1, 1, 7)}, Rational(1, 2)});
  CHECK_FALSE(e.is_zero());
  CHECK(e.approx() == doctest::Approx(std::cos(std::numbers::pi / 7) - 0.5));
  CHECK(conductor_of({{term(1, 1, 3), term(1, 1, 5)}, Rational(0)}) == 30);
  CHECK(conductor_of({{}, Rational(0)}) == 1);
  // lcm(2·97, 2·89) = 17266 > 10⁴
  CHECK_THROWS_AS(eval_exact({{term(1, 1, 97), term(1, 1, 89)}, Rational(0)}), DomainError);
}

TEST_CASE("eval_exact agrees with 50-digit evaluation to 1e-40") {
  std::mt19937_64 rng(2024);
  const cpp_bin_float_50 tol("1e-40");
  int compared = 0;
  for (int i = 0; i < 400; ++i) {
    const auto rel = random_relation(rng);
    if (conductor_of(rel) > kMaxConductor) continue;
    ++compared;
    const auto e = eval_exact(rel);
    const auto [re, im] = element_value(e);
    CHECK(abs(re - direct_value(rel)) < tol);
    CHECK(abs(im) < tol);
  }
  CHECK(compared > 300);
  for (const auto& id : fixed_identities()) {
    CHECK(abs(direct_value(id.relation)) < tol);
  }
}

TEST_CASE("is_rational_relation") {
  CHECK(is_rational_relation({{term(1, 1, 7), term(-1, 2, 7), term(1, 3, 7)}, Rational(0)}) == Rational(1, 2));
  CHECK_FALSE(is_rational_relation({{term(1, 1, 5)}, Rational(0)}));
  CHECK(is_rational_relation({{}, Rational(0)}) == Rational(0));
  CHECK(is_rational_relation({{term(4, 1, 3)}, Rational(9)}) == Rational(2));
}

TEST_CASE("all listed identities hold exactly") {
  const auto& list = fixed_identities();
  REQUIRE(list.size() == 9);
  for (const auto& id : list) {
    CHECK_MESSAGE(eval_exact(id.relation).is_zero(), id.relation.to_string());
    const auto m = match_family(id.relation);
    CHECK(m.kind == FamilyKind::Listed);
    CHECK(m.family == id.index);
    CHECK(m.scale == 1);
  }
  for (int d : {7, 9, 12, 15, 18, 21, 30, 40}) {
    const auto rel = t_family_relation(AngleFraction::make(1, d));
    CHECK(eval_exact(rel).is_zero());
  }
}

TEST_CASE("match_family examples") {
  const auto three = match_family({{term(1, 1, 5), term(-1, 2, 5)}, Rational(1, 2)});
  CHECK(three.kind == FamilyKind::Listed);
  CHECK(three.family == 3);

  const auto one = match_family({{term(2, 1, 3)}, Rational(1)});
  CHECK(one.kind == FamilyKind::Listed);
  CHECK(one.family == 1);
  CHECK(one.scale == 2);

  const auto t = match_family({{term(1, 5, 12), term(1, 1, 4), term(-1, 1, 12)}, Rational(0)});
  CHECK(t.kind == FamilyKind::Listed);
  CHECK(t.family == 2);
  REQUIRE(t.t);
  CHECK(*t.t == AngleFraction::make(1, 12));

  // un-normalized input is normalized first: cos(7π/12) = -cos(5π/12)
  const auto tn = match_family({{term(-1, 7, 12), term(1, 1, 4), term(-1, 1, 12)}, Rational(0)});
  CHECK(tn.family == 2);

  // a rational sum whose proper subset is already rational
  const auto red = match_family({{term(1, 1, 3), term(1, 1, 5), term(-1, 2, 5)}, Rational(1)});
  CHECK(red.kind == FamilyKind::Reducible);

  const auto triv = match_family({{term(1, 3, 5), term(1, 2, 5)}, Rational(0)});
  CHECK(triv.kind == FamilyKind::Trivial);

  CHECK_THROWS_AS(match_family({{term(1, 1, 7)}, Rational(1, 2)}), DomainError);
  CHECK_THROWS_AS(match_family({{term(1, 1, 3)}, Rational(1)}), DomainError);
}

TEST_CASE("bounded_search examples") {
  SearchOptions o;
  o.coeffs = {Rational(1), Rational(-1)};
  o.max_q = 7;
  const auto r7 = bounded_search(o);
  const auto has = [](const std::vector<FoundRelation>& found, int family) {
    return std::any_of(found.begin(), found.end(), [&](const FoundRelation& f) { return f.match.family == family; });
  };
  CHECK(has(r7, 4));
  o.max_q = 5;
  CHECK(has(bounded_search(o), 3));

  SearchOptions single;
  single.max_q = 4;
  single.max_terms = 1;
  single.coeffs = {Rational(1)};
  const auto r1 = bounded_search(single);
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].relation.terms[0].angle == AngleFraction::make(1, 3));
  CHECK(r1[0].relation.rhs == Rational(1, 2));

  SearchOptions bad;
  bad.max_q = 31;
  CHECK_THROWS_AS(bounded_search(bad), DomainError);
  bad.max_q = 5;
  bad.max_terms = 5;
  CHECK_THROWS_AS(bounded_search(bad), DomainError);
}

TEST_CASE("bounded_search output is rational, minimal and classified") {
  SearchOptions o;
  o.max_q = 12;
  const auto found = bounded_search(o);
  CHECK(found.size() >= 4);
  for (const auto& f : found) {
    CHECK(is_rational_relation(f.relation) == f.relation.rhs);
    CHECK(f.match.kind == FamilyKind::Listed);
    CHECK(sgn(f.relation.terms[0].coeff) > 0);
    // minimality: dropping any term leaves an irrational combination
    for (std::size_t k = 0; k < f.relation.terms.size() && f.relation.terms.size() > 1; ++k) {
      CJRelation sub = f.relation;
      sub.terms.erase(sub.terms.begin() + static_cast<long>(k));
      CHECK_FALSE(is_rational_relation(sub));
    }
  }
}

TEST_CASE("eqcos residual") {
  const auto half = AngleFraction::make(1, 2);
  const auto third = AngleFraction::make(1, 3);
  const auto z = parse_traces("0,0,0,0", Mode::Exact);
  auto r = eqcos_residual(z, {half, half, half, half});
  CHECK(r.residual.is_zero());
  CHECK(r.trace_identity_holds);

  const auto one = parse_traces("1,1,0,0", Mode::Exact);
  REQUIRE(one.sigma_x() == Scalar::exact(1));
  r = eqcos_residual(one, {third, half, half, half});
  CHECK(r.residual.is_zero());

  r = eqcos_residual(one, {half, half, half, half});
  CHECK_FALSE(r.residual.is_zero());
  CHECK_FALSE(r.trace_identity_holds);

  CHECK_THROWS_AS(eqcos_residual(parse_traces("0,0,0,0", Mode::Float), {half, half, half, half}), ModeError);
}

TEST_CASE("eqcos residual vanishes along a period-3 tau_Y orbit") {
  // (1, 1, 0) lies on the surface of (-1, 0, -1, 0): 1 + 1 - sigma_x - sigma_y + s = 0
  const auto b = parse_traces("-1,0,-1,0", Mode::Exact);
  const TracePoint p{Scalar::exact(1), Scalar::exact(1), Scalar::exact(0)};
  REQUIRE(kappa(b, p).is_zero());
  REQUIRE(twist_period(b, p, Axis::Y) == 3);
  const TracePoint q = apply_generator(b, p, {Axis::Y, 1});
  CHECK(apply_generator(b, apply_generator(b, q, {Axis::Y, 1}), {Axis::Y, 1}) == p);
  const auto angle = [](const Scalar& s) { return *rational_angle_of(s); };
  const EqCosAngles th{angle(p.x), angle(p.y), angle(p.z), angle(q.x)};
  const auto r = eqcos_residual(b, th, Axis::X);
  CHECK(r.residual.is_zero());
  CHECK(r.trace_identity_holds);
  // sigma_x = 2·(sum of the four cosines)
  CHECK(b.sigma_x() == Scalar::exact(0));
}
