#include "motive/motive_value.hpp"

#include "motive/errors.hpp"

#include <algorithm>
#include <sstream>

namespace motive {

namespace {

bool factor_less(const BinomialFactor& x, const BinomialFactor& y) {
  return x.a != y.a ? x.a < y.a : x.b < y.b;
}

/// lcm of two canonical multisets.
std::vector<BinomialFactor> lcm_factors(const std::vector<BinomialFactor>& x, const std::vector<BinomialFactor>& y) {
  std::vector<BinomialFactor> out;
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && factor_less(x[i], y[j]))) {
      out.push_back(x[i++]);
    } else if (i == x.size() || factor_less(y[j], x[i])) {
      out.push_back(y[j++]);
    } else {
      out.push_back({x[i].a, x[i].b, std::max(x[i].mult, y[j].mult)});
      ++i;
      ++j;
    }
  }
  return out;
}

/// Multiplies p by the factors of `big` not covered by `small` (small divides big).
BivariateLaurent lift(BivariateLaurent p, const std::vector<BinomialFactor>& small,
                      const std::vector<BinomialFactor>& big) {
  std::size_t i = 0;
  for (const auto& f : big) {
    int have = 0;
    while (i < small.size() && factor_less(small[i], f)) ++i;
    if (i < small.size() && small[i].a == f.a && small[i].b == f.b) have = small[i].mult;
    for (int k = have; k < f.mult; ++k) p = p.mul_binomial(f.a, f.b);
  }
  return p;
}

}  // namespace

std::vector<BinomialFactor> canonical_factors(std::vector<BinomialFactor> f) {
  std::sort(f.begin(), f.end(), factor_less);
  std::vector<BinomialFactor> out;
  for (const auto& x : f) {
    if (x.a < 0 || x.b < 0 || (x.a == 0 && x.b == 0))
      throw MotiveError(ErrorKind::InvalidArgument, "binomial factor exponents must be nonnegative and not both zero");
    if (x.mult <= 0) continue;
    if (!out.empty() && out.back().a == x.a && out.back().b == x.b) {
      out.back().mult += x.mult;
    } else {
      out.push_back(x);
    }
  }
  return out;
}

void MotiveValue::reduce() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  bool changed = true;
  while (changed && !den_.empty()) {
    changed = false;
    for (auto& f : den_) {
      while (f.mult > 0) {
        auto q = num_.try_div_binomial(f.a, f.b);
        if (!q) break;
        num_ = std::move(*q);
        --f.mult;
        changed = true;
      }
    }
    den_.erase(std::remove_if(den_.begin(), den_.end(), [](const BinomialFactor& f) { return f.mult == 0; }),
               den_.end());
  }
}

MotiveValue MotiveValue::fraction(BivariateLaurent num, std::vector<BinomialFactor> den) {
  MotiveValue r;
  r.num_ = std::move(num);
  r.den_ = canonical_factors(std::move(den));
  r.reduce();
  return r;
}

MotiveValue MotiveValue::lef(std::int64_t k) { return MotiveValue(BivariateLaurent::lef_power(k)); }

MotiveValue operator+(const MotiveValue& x, const MotiveValue& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  if (x.den_ == y.den_) {
    MotiveValue r;
    r.num_ = x.num_ + y.num_;
    r.den_ = x.den_;
    r.reduce();
    return r;
  }
  MotiveValue r;
  r.den_ = lcm_factors(x.den_, y.den_);
  r.num_ = lift(x.num_, x.den_, r.den_) + lift(y.num_, y.den_, r.den_);
  r.reduce();
  return r;
}

MotiveValue MotiveValue::operator-() const {
  MotiveValue r = *this;
  r.num_ = -r.num_;
  return r;
}

MotiveValue operator-(const MotiveValue& x, const MotiveValue& y) { return x + (-y); }

MotiveValue operator*(const MotiveValue& x, const MotiveValue& y) {
  if (x.is_zero() || y.is_zero()) return {};
  if (x.den_.empty() && y.den_.empty()) return MotiveValue(x.num_ * y.num_);
  MotiveValue r;
  r.num_ = x.num_ * y.num_;
  std::vector<BinomialFactor> d = x.den_;
  d.insert(d.end(), y.den_.begin(), y.den_.end());
  r.den_ = canonical_factors(std::move(d));
  r.reduce();
  return r;
}

bool MotiveValue::operator==(const MotiveValue& y) const {
  if (den_ == y.den_) return num_ == y.num_;
  return (*this - y).is_zero();
}

MotiveValue MotiveValue::pow(unsigned k) const {
  MotiveValue result(1), base = *this;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

MotiveValue MotiveValue::mul_lef(std::int64_t k) const {
  MotiveValue r = *this;
  r.num_ = r.num_.shifted(k, k);
  return r;
}

MotiveValue MotiveValue::scaled(const Integer& c) const {
  if (c == 0) return {};
  MotiveValue r = *this;
  r.num_ = r.num_.scaled(c);
  return r;
}

MotiveValue MotiveValue::div_binomial(std::int64_t a, std::int64_t b, int mult) const {
  if (a <= 0 && b <= 0 && (a < 0 || b < 0)) {
    // 1 - x^{-1} = -x^{-1}(1 - x), so 1/(1 - x^{-1}) = -x/(1 - x).
    MotiveValue r = *this;
    for (int i = 0; i < mult; ++i) r.num_ = (-r.num_).shifted(-a, -b);
    return r.div_binomial(-a, -b, mult);
  }
  if (a < 0 || b < 0 || (a == 0 && b == 0))
    throw MotiveError(ErrorKind::InvalidArgument, "unsupported binomial (1 - u^a v^b) with mixed signs or zero");
  if (is_zero()) return {};
  MotiveValue r = *this;
  std::vector<BinomialFactor> d = r.den_;
  d.push_back({a, b, mult});
  r.den_ = canonical_factors(std::move(d));
  r.reduce();
  return r;
}

MotiveValue MotiveValue::div_lef_minus_one(std::int64_t n) const {
  if (n == 0) throw MotiveError(ErrorKind::PoleAtUnit, "division by L^0 - 1");
  return (-*this).div_binomial(n, n);
}

MotiveValue MotiveValue::div_integer(const Integer& c) const {
  auto q = num_.try_div_integer(c);
  if (!q) throw MotiveError(ErrorKind::InvalidArgument, "numerator not divisible by " + c.get_str());
  MotiveValue r = *this;
  r.num_ = std::move(*q);
  return r;
}

MotiveValue MotiveValue::inverse() const {
  if (is_zero()) throw MotiveError(ErrorKind::ZeroConstantTerm, "inverse of zero");
  if (num_.size() != 1 || (num_.terms()[0].second != 1 && num_.terms()[0].second != -1))
    throw MotiveError(ErrorKind::NotInvertible, "numerator is not a unit monomial: " + num_.to_string());
  const auto& [e, c] = num_.terms()[0];
  BivariateLaurent p = BivariateLaurent::monomial(c, -e.u, -e.v);
  for (const auto& f : den_)
    for (int k = 0; k < f.mult; ++k) p = p.mul_binomial(f.a, f.b);
  return MotiveValue(p);
}

MotiveValue MotiveValue::swap_uv() const {
  std::vector<BinomialFactor> d;
  for (const auto& f : den_) d.push_back({f.b, f.a, f.mult});
  MotiveValue r;
  r.num_ = num_.swap_uv();
  r.den_ = canonical_factors(std::move(d));
  return r;
}

Rational MotiveValue::eval(const Rational& u0, const Rational& v0) const {
  Rational den = 1;
  for (const auto& f : den_) {
    Rational x = BivariateLaurent::monomial(1, f.a, f.b).eval(u0, v0);
    Rational base = 1 - x;
    if (base == 0) throw MotiveError(ErrorKind::PoleAtPoint, "denominator vanishes at evaluation point");
    for (int k = 0; k < f.mult; ++k) den *= base;
  }
  if ((u0 == 0 || v0 == 0) && !num_.is_polynomial())
    throw MotiveError(ErrorKind::PoleAtPoint, "negative exponent at a zero coordinate");
  return num_.eval(u0, v0) / den;
}

const BivariateLaurent& MotiveValue::to_polynomial() const {
  if (!den_.empty()) {
    std::string list;
    for (const auto& f : den_)
      list += "(1-u^" + std::to_string(f.a) + "v^" + std::to_string(f.b) + ")^" + std::to_string(f.mult) + " ";
    throw MotiveError(ErrorKind::ResidualDenominator, list);
  }
  return num_;
}

std::int64_t MotiveValue::top_total_degree() const {
  std::int64_t d = num_.max_total_degree();
  for (const auto& f : den_) d -= (f.a + f.b) * f.mult;
  return d;
}

std::string MotiveValue::to_string() const {
  std::ostringstream os;
  os << "(" << num_.to_string() << ")";
  for (const auto& f : den_) {
    os << " / (1 - u^" << f.a << " v^" << f.b << ")";
    if (f.mult != 1) os << "^" << f.mult;
  }
  return os.str();
}

void MotiveAccumulator::add_signed(const MotiveValue& x, bool negate) {
  if (x.is_zero()) return;
  if (x.den_ == den_) {
    if (negate) num_ -= x.num_; else num_ += x.num_;
    return;
  }
  auto l = lcm_factors(den_, x.den_);
  if (l != den_) {
    num_ = lift(std::move(num_), den_, l);
    den_ = l;
  }
  BivariateLaurent t = lift(x.num_, x.den_, den_);
  if (negate) num_ -= t; else num_ += t;
}

void MotiveAccumulator::add(const MotiveValue& x) { add_signed(x, false); }
void MotiveAccumulator::sub(const MotiveValue& x) { add_signed(x, true); }

MotiveValue MotiveAccumulator::result() const { return MotiveValue::fraction(num_, den_); }

}  // namespace motive
