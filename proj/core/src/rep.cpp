#include "charvar/rep.hpp"

#include <sstream>

#include "charvar/twists.hpp"

namespace charvar {

Mat2 Mat2::make(Rational e11, Rational e12, Rational e21, Rational e22) {
  Mat2 m(std::move(e11), std::move(e12), std::move(e21), std::move(e22));
  if (m.det() != 1) throw DomainError("Mat2: determinant " + Rational(m.det()).get_str() + " is not 1");
  return m;
}

Mat2 Mat2::inverse() const { return Mat2(e22_, -e12_, -e21_, e11_); }

bool Mat2::is_identity() const { return e11_ == 1 && e12_ == 0 && e21_ == 0 && e22_ == 1; }

Mat2 operator*(const Mat2& m, const Mat2& n) {
  return Mat2(m.e11_ * n.e11_ + m.e12_ * n.e21_, m.e11_ * n.e12_ + m.e12_ * n.e22_,
              m.e21_ * n.e11_ + m.e22_ * n.e21_, m.e21_ * n.e12_ + m.e22_ * n.e22_);
}

std::string Mat2::to_string() const {
  std::ostringstream os;
  os << "[[" << e11_.get_str() << ", " << e12_.get_str() << "], [" << e21_.get_str() << ", " << e22_.get_str()
     << "]]";
  return os.str();
}

RepFour RepFour::make(Mat2 a, Mat2 b, Mat2 c, Mat2 d) {
  if (!(a * b * c * d).is_identity()) throw DomainError("RepFour: A·B·C·D is not the identity");
  return {std::move(a), std::move(b), std::move(c), std::move(d)};
}

RepFour from_triple(const Mat2& a, const Mat2& b, const Mat2& c) {
  return RepFour::make(a, b, c, (a * b * c).inverse());
}

TraceCoordinates trace_coordinates(const RepFour& rep) {
  BoundaryTraces traces = BoundaryTraces::make(rep.A.trace(), rep.B.trace(), rep.C.trace(), rep.D.trace());
  TracePoint point{(rep.A * rep.B).trace(), (rep.B * rep.C).trace(), (rep.C * rep.A).trace()};
  if (!kappa(traces, point).is_zero()) throw InternalCheckFailure("trace_coordinates: point is off the surface");
  return {std::move(traces), std::move(point)};
}

namespace {

bool in_open_range(const Rational& t) { return t > -2 && t < 2; }
bool rational_half_angle(const Rational& t) { return t == 0 || t == 1 || t == -1; }

}  // namespace

bool is_in_F(const Rational& a, const Rational& c) {
  if (!in_open_range(a) || !in_open_range(c)) throw DomainError("is_in_F: traces must lie in (-2, 2)");
  return a * a + c * c > 4 && !(rational_half_angle(a) && rational_half_angle(c));
}

DensityIngredients density_ingredients(const RepFour& rep) {
  DensityIngredients out;
  const Mat2* gens[] = {&rep.A, &rep.B, &rep.C};
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (!(*gens[i] * *gens[j] == *gens[j] * *gens[i])) out.non_abelian = true;
    }
  }
  const Rational t[] = {rep.A.trace(), rep.B.trace(), rep.C.trace(), rep.D.trace()};
  out.traces_in_range = true;
  for (const auto& v : t) {
    if (!in_open_range(v)) out.traces_in_range = false;
    if (in_open_range(v) && !rational_half_angle(v)) out.irrational_elliptic = true;
  }
  if (out.traces_in_range) {
    const auto [b, p] = trace_coordinates(rep);
    for (const auto& g : all_generators()) {
      if (!(apply_generator(b, p, g) == p)) out.nontrivial_action = true;
    }
  }
  return out;
}

RepFour exceptional_example() {
  const Mat2 a = Mat2::make(Rational(4, 5), Rational(-3, 5), Rational(7, 5), Rational(1, 5));
  const Mat2 c = Mat2::make(Rational(1), Rational(-1, 4), Rational(1), Rational(3, 4));
  return from_triple(a, a, c);
}

}  // namespace charvar
