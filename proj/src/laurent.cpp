#include "motive/laurent.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <sstream>

namespace motive {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Merges sorted term lists a and sign*b.
std::vector<BivariateLaurent::Term> merge(const std::vector<BivariateLaurent::Term>& a,
                                          const std::vector<BivariateLaurent::Term>& b, bool negate_b) {
  std::vector<BivariateLaurent::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, negate_b ? Integer(-b[j].second) : b[j].second);
      ++j;
    } else {
      Integer c = negate_b ? Integer(a[i].second - b[j].second) : Integer(a[i].second + b[j].second);
      if (c != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

Rational rational_pow(const Rational& x, std::int64_t e) {
  Rational base = x;
  if (e < 0) {
    base = 1 / x;
    e = -e;
  }
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
  r.canonicalize();
  return r;
}

std::size_t max_bits(const BivariateLaurent& p) {
  std::size_t m = 1;
  for (const auto& [e, c] : p.terms()) m = std::max(m, mpz_sizeinbase(c.get_mpz_t(), 2));
  return m;
}

/// Packs coefficients at slot positions into a signed big integer with slot width limbs_per_slot.
Integer pack(const BivariateLaurent& p, std::int64_t u0, std::int64_t v0, std::int64_t width,
             std::size_t slots, std::size_t limbs_per_slot) {
  std::vector<mp_limb_t> pos(slots * limbs_per_slot, 0), neg;
  bool any_neg = false;
  for (const auto& [e, c] : p.terms()) {
    auto idx = static_cast<std::size_t>((e.u - u0) + (e.v - v0) * width);
    const mpz_srcptr z = c.get_mpz_t();
    std::size_t n = mpz_size(z);
    std::vector<mp_limb_t>* buf = &pos;
    if (mpz_sgn(z) < 0) {
      if (!any_neg) {
        neg.assign(slots * limbs_per_slot, 0);
        any_neg = true;
      }
      buf = &neg;
    }
    std::memcpy(buf->data() + idx * limbs_per_slot, mpz_limbs_read(z), n * sizeof(mp_limb_t));
  }
  auto to_mpz = [](const std::vector<mp_limb_t>& limbs) {
    Integer r;
    if (limbs.empty()) return r;
    mp_limb_t* w = mpz_limbs_write(r.get_mpz_t(), static_cast<mp_size_t>(limbs.size()));
    std::memcpy(w, limbs.data(), limbs.size() * sizeof(mp_limb_t));
    mpz_limbs_finish(r.get_mpz_t(), static_cast<mp_size_t>(limbs.size()));
    return r;
  };
  Integer r = to_mpz(pos);
  if (any_neg) r -= to_mpz(neg);
  return r;
}

}  // namespace

BivariateLaurent::BivariateLaurent(long c) {
  if (c != 0) terms_.emplace_back(Exponent{0, 0}, Integer(c));
}

BivariateLaurent::BivariateLaurent(const Integer& c) {
  if (c != 0) terms_.emplace_back(Exponent{0, 0}, c);
}

BivariateLaurent BivariateLaurent::monomial(const Integer& c, std::int64_t eu, std::int64_t ev) {
  BivariateLaurent p;
  if (c != 0) p.terms_.emplace_back(Exponent{eu, ev}, c);
  return p;
}

BivariateLaurent BivariateLaurent::lef_power(std::int64_t k) { return monomial(1, k, k); }

BivariateLaurent BivariateLaurent::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
  BivariateLaurent p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
    } else {
      if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
  return p;
}

Integer BivariateLaurent::coeff(std::int64_t eu, std::int64_t ev) const {
  Exponent e{eu, ev};
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, const Exponent& x) { return t.first < x; });
  if (it != terms_.end() && it->first == e) return it->second;
  return 0;
}

BivariateLaurent& BivariateLaurent::operator+=(const BivariateLaurent& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

BivariateLaurent& BivariateLaurent::operator-=(const BivariateLaurent& o) {
  if (o.is_zero()) return *this;
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

BivariateLaurent BivariateLaurent::operator-() const {
  BivariateLaurent r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

BivariateLaurent& BivariateLaurent::operator*=(const BivariateLaurent& o) {
  *this = *this * o;
  return *this;
}

bool BivariateLaurent::operator==(const BivariateLaurent& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].first != o.terms_[i].first || terms_[i].second != o.terms_[i].second) return false;
  }
  return true;
}

void BivariateLaurent::add_scaled_shift(const BivariateLaurent& o, const Integer& c, std::int64_t du,
                                        std::int64_t dv) {
  if (o.is_zero() || c == 0) return;
  std::vector<Term> shifted;
  shifted.reserve(o.terms_.size());
  for (const auto& [e, x] : o.terms_) shifted.emplace_back(Exponent{e.u + du, e.v + dv}, x * c);
  terms_ = merge(terms_, shifted, false);
}

BivariateLaurent multiply_schoolbook(const BivariateLaurent& a, const BivariateLaurent& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const BivariateLaurent& small = a.size() <= b.size() ? a : b;
  const BivariateLaurent& big = a.size() <= b.size() ? b : a;
  if (small.size() <= 8) {
    BivariateLaurent r;
    for (const auto& [e, c] : small.terms_) r.add_scaled_shift(big, c, e.u, e.v);
    return r;
  }
  const std::int64_t u0 = a.min_u() + b.min_u(), v0 = a.min_v() + b.min_v();
  const std::int64_t w = a.max_u() + b.max_u() - u0 + 1, h = a.max_v() + b.max_v() - v0 + 1;
  const double slots = static_cast<double>(w) * static_cast<double>(h);
  const double work = static_cast<double>(a.size()) * static_cast<double>(b.size());
  if (slots <= 4.0 * work + 4096.0 && slots < 6.0e7) {
    std::vector<mpz_class> dense(static_cast<std::size_t>(w * h));
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        auto idx = static_cast<std::size_t>((ea.u + eb.u - u0) + (ea.v + eb.v - v0) * w);
        mpz_addmul(dense[idx].get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
      }
    }
    std::vector<BivariateLaurent::Term> out;
    for (std::int64_t i = 0; i < w; ++i) {
      for (std::int64_t j = 0; j < h; ++j) {
        auto& c = dense[static_cast<std::size_t>(i + j * w)];
        if (c != 0) out.emplace_back(Exponent{u0 + i, v0 + j}, std::move(c));
      }
    }
    BivariateLaurent r;
    r.terms_ = std::move(out);  // already sorted by (u, v)
    return r;
  }
  std::vector<BivariateLaurent::Term> all;
  all.reserve(a.size() * b.size());
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) all.emplace_back(Exponent{ea.u + eb.u, ea.v + eb.v}, ca * cb);
  return BivariateLaurent::from_terms(std::move(all));
}

BivariateLaurent multiply_kronecker(const BivariateLaurent& a, const BivariateLaurent& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const std::int64_t ua = a.min_u(), va = a.min_v(), ub = b.min_u(), vb = b.min_v();
  const std::int64_t w = (a.max_u() - ua) + (b.max_u() - ub) + 1;
  const std::int64_t ha = a.max_v() - va + 1, hb = b.max_v() - vb + 1;
  std::size_t n_small = std::min(a.size(), b.size());
  std::size_t guard = 0;
  while ((std::size_t{1} << guard) <= n_small) ++guard;
  std::size_t bits = max_bits(a) + max_bits(b) + guard + 2;
  std::size_t limbs = (bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;
  auto slots_a = static_cast<std::size_t>(w * (ha - 1) + (a.max_u() - ua) + 1);
  auto slots_b = static_cast<std::size_t>(w * (hb - 1) + (b.max_u() - ub) + 1);
  Integer pa = pack(a, ua, va, w, slots_a, limbs);
  Integer pb = pack(b, ub, vb, w, slots_b, limbs);
  Integer prod = pa * pb;
  bool negative = prod < 0;
  if (negative) prod = -prod;

  const std::size_t slots_c = slots_a + slots_b - 1;
  const mp_limb_t* data = mpz_limbs_read(prod.get_mpz_t());
  const std::size_t nlimbs = mpz_size(prod.get_mpz_t());
  const std::size_t slot_bits = limbs * GMP_NUMB_BITS;
  Integer full, half, slot;
  mpz_setbit(full.get_mpz_t(), slot_bits);
  mpz_setbit(half.get_mpz_t(), slot_bits - 1);
  std::vector<BivariateLaurent::Term> out;
  int carry = 0;
  for (std::size_t i = 0; i < slots_c; ++i) {
    std::size_t lo = i * limbs;
    std::size_t n = lo >= nlimbs ? 0 : std::min(limbs, nlimbs - lo);
    bool zero = true;
    for (std::size_t k = 0; k < n && zero; ++k) zero = data[lo + k] == 0;
    if (zero && carry == 0) continue;
    if (zero) {
      slot = 0;
    } else {
      mpz_t view;
      mpz_roinit_n(view, data + lo, static_cast<mp_size_t>(n));
      mpz_set(slot.get_mpz_t(), view);
    }
    slot += carry;
    if (slot >= half) {
      slot -= full;
      carry = 1;
    } else {
      carry = 0;
    }
    if (slot == 0) continue;
    auto idx = static_cast<std::int64_t>(i);
    Exponent e{ua + ub + idx % w, va + vb + idx / w};
    out.emplace_back(e, negative ? Integer(-slot) : slot);
  }
  // Slot order is (v, u)-major; restore (u, v) order.
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  BivariateLaurent r;
  r.terms_ = std::move(out);
  return r;
}

BivariateLaurent operator*(const BivariateLaurent& a, const BivariateLaurent& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const double work = static_cast<double>(a.size()) * static_cast<double>(b.size());
  if (std::min(a.size(), b.size()) > 16 && work > 40000.0) {
    const double w = static_cast<double>(a.max_u() - a.min_u() + b.max_u() - b.min_u() + 1);
    const double h = static_cast<double>(a.max_v() - a.min_v() + b.max_v() - b.min_v() + 1);
    if (w * h < 8.0 * work) return multiply_kronecker(a, b);
  }
  return multiply_schoolbook(a, b);
}

BivariateLaurent BivariateLaurent::scaled(const Integer& c) const {
  if (c == 0) return {};
  BivariateLaurent r = *this;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

BivariateLaurent BivariateLaurent::shifted(std::int64_t du, std::int64_t dv) const {
  BivariateLaurent r = *this;
  for (auto& t : r.terms_) {
    t.first.u += du;
    t.first.v += dv;
  }
  return r;
}

BivariateLaurent BivariateLaurent::swap_uv() const {
  std::vector<Term> ts;
  ts.reserve(terms_.size());
  for (const auto& [e, c] : terms_) ts.emplace_back(Exponent{e.v, e.u}, c);
  return from_terms(std::move(ts));
}

BivariateLaurent BivariateLaurent::pow(unsigned k) const {
  BivariateLaurent result(1), base = *this;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

std::optional<BivariateLaurent> BivariateLaurent::try_div_integer(const Integer& c) const {
  BivariateLaurent r = *this;
  for (auto& t : r.terms_) {
    if (!mpz_divisible_p(t.second.get_mpz_t(), c.get_mpz_t())) return std::nullopt;
    mpz_divexact(t.second.get_mpz_t(), t.second.get_mpz_t(), c.get_mpz_t());
  }
  return r;
}

std::optional<BivariateLaurent> BivariateLaurent::try_div_binomial(std::int64_t a, std::int64_t b) const {
  if (is_zero()) return BivariateLaurent{};
  // Group terms by the line e + Z(a, b); q is the running prefix sum along each line.
  std::map<Exponent, std::vector<std::pair<std::int64_t, const Integer*>>> lines;
  for (const auto& [e, c] : terms_) {
    std::int64_t t = a != 0 ? floor_div(e.u, a) : floor_div(e.v, b);
    lines[Exponent{e.u - t * a, e.v - t * b}].emplace_back(t, &c);
  }
  std::vector<Term> out;
  Integer s;
  for (auto& [rep, pts] : lines) {
    std::sort(pts.begin(), pts.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    s = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      s += *pts[i].second;
      if (i + 1 == pts.size()) break;
      if (s == 0) continue;
      for (std::int64_t t = pts[i].first; t < pts[i + 1].first; ++t)
        out.emplace_back(Exponent{rep.u + t * a, rep.v + t * b}, s);
    }
    if (s != 0) return std::nullopt;
  }
  return from_terms(std::move(out));
}

BivariateLaurent BivariateLaurent::mul_binomial(std::int64_t a, std::int64_t b) const {
  BivariateLaurent r = *this;
  r.add_scaled_shift(*this, -1, a, b);
  return r;
}

Rational BivariateLaurent::eval(const Rational& u0, const Rational& v0) const {
  Rational s = 0;
  for (const auto& [e, c] : terms_) s += Rational(c) * rational_pow(u0, e.u) * rational_pow(v0, e.v);
  return s;
}

Integer BivariateLaurent::content() const {
  Integer g = 0;
  for (const auto& t : terms_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.second.get_mpz_t());
  return g;
}

bool BivariateLaurent::is_polynomial() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.first.u >= 0 && t.first.v >= 0; });
}

std::int64_t BivariateLaurent::min_u() const { return terms_.front().first.u; }
std::int64_t BivariateLaurent::max_u() const { return terms_.back().first.u; }

std::int64_t BivariateLaurent::min_v() const {
  std::int64_t m = terms_.front().first.v;
  for (const auto& t : terms_) m = std::min(m, t.first.v);
  return m;
}

std::int64_t BivariateLaurent::max_v() const {
  std::int64_t m = terms_.front().first.v;
  for (const auto& t : terms_) m = std::max(m, t.first.v);
  return m;
}

std::int64_t BivariateLaurent::max_total_degree() const {
  std::int64_t m = terms_.front().first.u + terms_.front().first.v;
  for (const auto& t : terms_) m = std::max(m, t.first.u + t.first.v);
  return m;
}

std::int64_t BivariateLaurent::min_total_degree() const {
  std::int64_t m = terms_.front().first.u + terms_.front().first.v;
  for (const auto& t : terms_) m = std::min(m, t.first.u + t.first.v);
  return m;
}

BivariateLaurent BivariateLaurent::top_part() const {
  if (is_zero()) return {};
  std::int64_t top = max_total_degree();
  BivariateLaurent r;
  for (const auto& t : terms_)
    if (t.first.u + t.first.v == top) r.terms_.push_back(t);
  return r;
}

std::string BivariateLaurent::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first for readability.
  std::vector<const Term*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(), [](const Term* x, const Term* y) {
    auto dx = x->first.u + x->first.v, dy = y->first.u + y->first.v;
    if (dx != dy) return dx > dy;
    return x->first.u > y->first.u;
  });
  for (const Term* t : order) {
    Integer c = t->second;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool unit = c == 1 && (t->first.u != 0 || t->first.v != 0);
    if (!unit) os << c.get_str();
    auto var = [&](const char* name, std::int64_t e, bool need_star) {
      if (e == 0) return need_star;
      if (need_star) os << "*";
      os << name;
      if (e != 1) os << "^" << (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
      return true;
    };
    bool star = var("u", t->first.u, !unit);
    var("v", t->first.v, star);
  }
  return os.str();
}

}  // namespace motive
