#include "charvar/cyclotomic.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace charvar {

namespace {

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  std::int64_t t = 0, new_t = 1;
  auto r = static_cast<std::int64_t>(m);
  auto new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw InternalCheckFailure("mod_inverse: arguments not coprime");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

}  // namespace

CycloField::CycloField(std::uint64_t conductor) : conductor_(conductor) {
  if (conductor == 0) throw DomainError("cyclotomic conductor must be positive");
  std::uint64_t rest = conductor;
  std::uint64_t stride = 1;
  for (std::uint64_t p = 2; rest > 1; ++p) {
    if (p * p > rest) p = rest;
    if (rest % p != 0) continue;
    std::uint64_t order = 1;
    while (rest % p == 0) {
      rest /= p;
      order *= p;
    }
    Factor f{};
    f.prime = p;
    f.order = order;
    f.degree = order / p * (p - 1);
    f.cofactor = conductor / order;
    f.crt_inverse = mod_inverse(f.cofactor % order, order);
    f.stride = stride;
    stride *= f.degree;
    factors_.push_back(f);
  }
  degree_ = stride;
}

std::shared_ptr<const CycloField> CycloField::get(std::uint64_t conductor) {
  static std::mutex mutex;
  static std::unordered_map<std::uint64_t, std::shared_ptr<const CycloField>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[conductor];
  if (!slot) slot = std::make_shared<const CycloField>(conductor);
  return slot;
}

std::vector<std::pair<std::uint64_t, int>> CycloField::expand_local(const std::vector<std::uint64_t>& exponents) const {
  std::vector<std::pair<std::uint64_t, int>> out{{0, 1}};
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const Factor& f = factors_[i];
    const std::uint64_t e = exponents[i] % f.order;
    std::vector<std::pair<std::uint64_t, int>> local;
    if (e < f.degree) {
      local.emplace_back(e, 1);
    } else {
      // ζ^{(p-1)p^{a-1} + r} = -Σ_{k=0}^{p-2} ζ^{k·p^{a-1} + r}
      const std::uint64_t block = f.order / f.prime;
      const std::uint64_t r = e - f.degree;
      for (std::uint64_t k = 0; k + 1 < f.prime; ++k) local.emplace_back(k * block + r, -1);
    }
    std::vector<std::pair<std::uint64_t, int>> next;
    next.reserve(out.size() * local.size());
    for (const auto& [idx, sign] : out) {
      for (const auto& [j, s] : local) next.emplace_back(idx + j * f.stride, sign * s);
    }
    out = std::move(next);
  }
  return out;
}

std::vector<std::pair<std::uint64_t, int>> CycloField::expand_power(std::uint64_t e) const {
  std::vector<std::uint64_t> local(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const Factor& f = factors_[i];
    local[i] = static_cast<std::uint64_t>((static_cast<UInt128>(e % f.order) * f.crt_inverse) % f.order);
  }
  return expand_local(local);
}

std::vector<std::pair<std::uint64_t, int>> CycloField::multiply_basis(std::uint64_t i, std::uint64_t j) const {
  std::vector<std::uint64_t> local(factors_.size());
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    const Factor& f = factors_[k];
    const std::uint64_t di = (i / f.stride) % f.degree;
    const std::uint64_t dj = (j / f.stride) % f.degree;
    local[k] = (di + dj) % f.order;
  }
  return expand_local(local);
}

std::uint64_t CycloField::basis_exponent(std::uint64_t index) const {
  UInt128 e = 0;
  for (const Factor& f : factors_) {
    const std::uint64_t digit = (index / f.stride) % f.degree;
    e += static_cast<UInt128>(digit) * f.cofactor;
  }
  return static_cast<std::uint64_t>(e % conductor_);
}

// -------------------------------------------------------------- CycloElement

CycloElement::CycloElement(std::uint64_t conductor) : field_(CycloField::get(conductor)) {}

CycloElement CycloElement::from_rational(std::uint64_t conductor, const Rational& r) {
  CycloElement out(conductor);
  out.add_term(0, r);
  return out;
}

CycloElement CycloElement::root_of_unity(std::uint64_t conductor, std::int64_t k) {
  CycloElement out(conductor);
  const auto l = static_cast<std::int64_t>(conductor);
  std::int64_t e = k % l;
  if (e < 0) e += l;
  for (const auto& [idx, sign] : out.field_->expand_power(static_cast<std::uint64_t>(e))) {
    out.add_term(idx, Rational(sign));
  }
  return out;
}

CycloElement CycloElement::cos_of(std::uint64_t conductor, const AngleFraction& angle) {
  const auto two_q = static_cast<std::uint64_t>(2 * angle.den());
  if (conductor % two_q != 0) {
    throw DomainError("cos_of: conductor " + std::to_string(conductor) + " not divisible by " + std::to_string(two_q));
  }
  const auto step = static_cast<std::int64_t>(conductor / two_q);
  CycloElement out = root_of_unity(conductor, angle.num() * step);
  out += root_of_unity(conductor, -angle.num() * step);
  out *= Rational(1, 2);
  return out;
}

void CycloElement::add_term(std::uint64_t index, const Rational& value) {
  if (sgn(value) == 0) return;
  auto [it, inserted] = coords_.try_emplace(index, value);
  if (!inserted) {
    it->second += value;
    if (sgn(it->second) == 0) coords_.erase(it);
  }
}

void CycloElement::require_same_field(const CycloElement& other) const {
  if (conductor() != other.conductor()) throw DomainError("cyclotomic elements from different fields");
}

bool CycloElement::is_rational() const {
  return coords_.empty() || (coords_.size() == 1 && coords_.begin()->first == 0);
}

std::optional<Rational> CycloElement::rational_value() const {
  if (!is_rational()) return std::nullopt;
  return constant_term();
}

Rational CycloElement::constant_term() const {
  const auto it = coords_.find(0);
  return it == coords_.end() ? Rational(0) : it->second;
}

CycloElement CycloElement::irrational_part() const {
  CycloElement out = *this;
  out.coords_.erase(0);
  return out;
}

CycloElement CycloElement::embed(std::uint64_t m) const {
  if (m == 0 || m % conductor() != 0) {
    throw DomainError("embed: " + std::to_string(conductor()) + " does not divide " + std::to_string(m));
  }
  const std::uint64_t step = m / conductor();
  CycloElement out(m);
  for (const auto& [idx, v] : coords_) {
    const auto e = static_cast<std::int64_t>(field_->basis_exponent(idx) * step);
    for (const auto& [k, sign] : out.field_->expand_power(static_cast<std::uint64_t>(e))) {
      out.add_term(k, sign > 0 ? v : Rational(-v));
    }
  }
  return out;
}

CycloElement& CycloElement::operator+=(const CycloElement& rhs) {
  require_same_field(rhs);
  for (const auto& [idx, v] : rhs.coords_) add_term(idx, v);
  return *this;
}

CycloElement& CycloElement::operator-=(const CycloElement& rhs) {
  require_same_field(rhs);
  for (const auto& [idx, v] : rhs.coords_) add_term(idx, Rational(-v));
  return *this;
}

CycloElement& CycloElement::operator*=(const Rational& r) {
  if (sgn(r) == 0) {
    coords_.clear();
    return *this;
  }
  for (auto& [idx, v] : coords_) v *= r;
  return *this;
}

CycloElement operator*(const CycloElement& a, const CycloElement& b) {
  a.require_same_field(b);
  CycloElement out(a.conductor());
  for (const auto& [i, va] : a.coords_) {
    for (const auto& [j, vb] : b.coords_) {
      const Rational prod = va * vb;
      for (const auto& [k, sign] : a.field_->multiply_basis(i, j)) {
        out.add_term(k, sign > 0 ? prod : Rational(-prod));
      }
    }
  }
  return out;
}

bool operator==(const CycloElement& a, const CycloElement& b) {
  return a.conductor() == b.conductor() && a.coords_ == b.coords_;
}

double CycloElement::approx() const {
  long double sum = 0;
  const auto l = static_cast<long double>(conductor());
  for (const auto& [idx, v] : coords_) {
    const auto e = static_cast<long double>(field_->basis_exponent(idx));
    sum += static_cast<long double>(v.get_d()) * std::cos(2 * std::numbers::pi_v<long double> * e / l);
  }
  return static_cast<double>(sum);
}

std::string CycloElement::to_string() const {
  std::ostringstream os;
  os << "Q(zeta_" << conductor() << "): ";
  if (coords_.empty()) {
    os << "0";
    return os.str();
  }
  bool first = true;
  for (const auto& [idx, v] : coords_) {
    if (!first) os << " + ";
    first = false;
    os << v.get_str();
    if (idx != 0) os << "*zeta^" << field_->basis_exponent(idx);
  }
  return os.str();
}

std::size_t rank_over_q(const std::vector<CycloElement>& elements) {
  std::map<std::uint64_t, std::map<std::uint64_t, Rational>> pivots;
  for (const auto& e : elements) {
    if (e.conductor() != elements.front().conductor()) {
      throw DomainError("rank_over_q: elements from different fields");
    }
    std::map<std::uint64_t, Rational> v = e.coordinates();
    for (const auto& [key, row] : pivots) {
      const auto it = v.find(key);
      if (it == v.end()) continue;
      const Rational factor = it->second / row.at(key);
      for (const auto& [k, rv] : row) {
        Rational& slot = v[k];
        slot -= factor * rv;
        if (sgn(slot) == 0) v.erase(k);
      }
    }
    if (!v.empty()) {
      const std::uint64_t key = v.begin()->first;
      pivots.emplace(key, std::move(v));
    }
  }
  return pivots.size();
}

}  // namespace charvar
