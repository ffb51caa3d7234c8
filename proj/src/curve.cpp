#include "motive/curve.hpp"

#include "motive/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace motive {

namespace {

Integer binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

/// All compositions of n in lexicographic order.
void compositions(int n, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = 1; k <= n; ++k) {
    cur.push_back(k);
    compositions(n - k, cur, out);
    cur.pop_back();
  }
}

std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

}  // namespace

MotiveValue lef() { return MotiveValue::lef(1); }

CurveContext::CurveContext(int genus) : g_(genus) {
  if (genus < 2) throw MotiveError(ErrorKind::InvalidArgument, "genus must be at least 2");
  // (1 - tu)^g (1 - tv)^g = sum_i t^i sum_{a+b=i} (-1)^i C(g,a) C(g,b) u^a v^b.
  p_coeffs_.resize(static_cast<std::size_t>(2 * g_ + 1));
  for (int a = 0; a <= g_; ++a) {
    for (int b = 0; b <= g_; ++b) {
      Integer c = binomial(g_, a) * binomial(g_, b);
      if ((a + b) % 2) c = -c;
      p_coeffs_[static_cast<std::size_t>(a + b)] += BivariateLaurent::monomial(c, a, b);
    }
  }
}

const BivariateLaurent& CurveContext::p_coeff(int i) const {
  static const BivariateLaurent zero;
  if (i < 0 || i > 2 * g_) return zero;
  return p_coeffs_[static_cast<std::size_t>(i)];
}

const MotiveValue& CurveContext::p_at_power(std::int64_t k) const {
  return p_at_.get(k, [&] {
    BivariateLaurent one(1);
    BivariateLaurent x = one - BivariateLaurent::monomial(1, k + 1, k);
    BivariateLaurent y = one - BivariateLaurent::monomial(1, k, k + 1);
    return MotiveValue((x * y).pow(static_cast<unsigned>(g_)));
  });
}

const MotiveValue& CurveContext::upic() const {
  return upic_.get(0, [&] { return p_at_power(0).div_lef_minus_one(1); });
}

const MotiveValue& CurveContext::sym_curve(int k) const {
  if (k < 0) throw MotiveError(ErrorKind::InvalidArgument, "sym_curve requires k >= 0");
  return sym_curve_.get(k, [&] {
    // coeff_{t^k} P(t)/((1-t)(1-Lt)) = sum_i P_i (1 + L + ... + L^{k-i}).
    std::vector<BivariateLaurent::Term> ts;
    for (int i = 0; i <= std::min(k, 2 * g_); ++i) {
      for (const auto& [e, c] : p_coeff(i).terms()) {
        for (int j = 0; j <= k - i; ++j) ts.emplace_back(Exponent{e.u + j, e.v + j}, c);
      }
    }
    return MotiveValue(BivariateLaurent::from_terms(std::move(ts)));
  });
}

const MotiveValue& CurveContext::zeta_at_power(std::int64_t m) const {
  if (m == 0 || m == -1) throw MotiveError(ErrorKind::PoleAtUnit, "zeta function pole at t = L^" + std::to_string(m));
  return zeta_.get(m, [&] { return p_at_power(m).div_binomial(m, m).div_binomial(m + 1, m + 1); });
}

MotiveValue CurveContext::sym_curve_tail(int N, int K) const {
  if (N < 2) throw MotiveError(ErrorKind::UnsupportedTailExponent, "tail exponent N = " + std::to_string(N));
  MotiveAccumulator acc;
  acc.add(zeta_at_power(-N));
  for (int k = 0; k < K; ++k) acc.sub(sym_curve(k).mul_lef(-static_cast<std::int64_t>(N) * k));
  return acc.result();
}

const MotiveValue& CurveContext::sym_proj(int n, int l) const {
  if (n < 1 || l < 0) throw MotiveError(ErrorKind::InvalidArgument, "sym_proj requires n >= 1, l >= 0");
  return sym_proj_.get({n, l}, [&] {
    TruncatedSeries den(l);
    den[0] = 1;
    for (int i = 0; i < n; ++i) den = den * one_minus(MotiveValue::lef(i), 1, l);
    return series_invert(den)[l];
  });
}

const MotiveValue& CurveContext::sym_curve_proj(int n, int l) const {
  if (n < 1 || l < 0) throw MotiveError(ErrorKind::InvalidArgument, "sym_curve_proj requires n >= 1, l >= 0");
  return sym_curve_proj_.get({n, l}, [&] {
    TruncatedSeries num(l), den(l);
    num[0] = 1;
    den[0] = 1;
    for (int i = 0; i < n; ++i) {
      TruncatedSeries p(l);
      for (int j = 0; j <= std::min(l, 2 * g_); ++j) p[j] = MotiveValue(p_coeff(j).shifted(i * j, i * j));
      num = num * p;
      den = den * one_minus(MotiveValue::lef(i), 1, l) * one_minus(MotiveValue::lef(i + 1), 1, l);
    }
    return (num * series_invert(den))[l];
  });
}

const MotiveValue& CurveContext::sym_two_curves(int d) const {
  return sym_two_.get(d, [&] {
    MotiveAccumulator acc;
    for (int e = 0; e <= d; ++e) acc.add(sym_curve(e) * sym_curve(d - e));
    return acc.result();
  });
}

const MotiveValue& CurveContext::bun(int n) const {
  if (n < 1) throw MotiveError(ErrorKind::InvalidArgument, "bun requires n >= 1");
  return bun_.get(n, [&] {
    MotiveValue r = upic().mul_lef(static_cast<std::int64_t>(n * n - 1) * (g_ - 1));
    for (int k = 2; k <= n; ++k) r = r * zeta_at_power(-k);
    return r;
  });
}

std::vector<HNCompositionTerm> CurveContext::bun_ss_terms(int n, std::int64_t d) const {
  std::vector<std::vector<int>> comps;
  std::vector<int> cur;
  compositions(n, cur, comps);
  std::vector<HNCompositionTerm> out;
  for (auto& parts : comps) {
    Rational e = 0;
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t j = i + 1; j < parts.size(); ++j) e += Rational(parts[i] * parts[j] * (g_ - 1));
    std::int64_t prefix = 0;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      prefix += parts[i];
      Rational frac(mod(prefix * d, n), n);
      frac.canonicalize();
      e += Rational(parts[i] + parts[i + 1]) * frac;
    }
    e.canonicalize();
    out.push_back({parts, e});
  }
  return out;
}

const MotiveValue& CurveContext::bun_ss(int n, std::int64_t d) const {
  if (n < 1) throw MotiveError(ErrorKind::InvalidArgument, "bun_ss requires n >= 1");
  return bun_ss_.get({n, mod(d, n)}, [&] {
    MotiveAccumulator acc;
    for (const auto& term : bun_ss_terms(n, d)) {
      if (term.exponent.get_den() != 1)
        throw MotiveError(ErrorKind::NonIntegralExponent, "composition term exponent " + term.exponent.get_str());
      MotiveValue t = MotiveValue::lef(term.exponent.get_num().get_si());
      for (int p : term.parts) t = t * bun(p);
      for (std::size_t i = 0; i + 1 < term.parts.size(); ++i)
        t = t.div_lef_minus_one(term.parts[i] + term.parts[i + 1]);
      if (term.parts.size() % 2 == 0) acc.sub(t); else acc.add(t);
    }
    return acc.result();
  });
}

std::vector<Integer> e_to_poincare(const BivariateLaurent& p, std::int64_t dim) {
  std::vector<Integer> b(static_cast<std::size_t>(2 * dim + 1));
  for (const auto& [e, c] : p.terms()) {
    std::int64_t n = e.u + e.v;
    if (e.u < 0 || e.v < 0 || n > 2 * dim)
      throw MotiveError(ErrorKind::InvalidArgument, "E-polynomial degree exceeds 2*dim");
    auto& slot = b[static_cast<std::size_t>(2 * dim - n)];
    if (n % 2) slot -= c; else slot += c;
  }
  return b;
}

std::vector<HodgeEntry> e_to_hodge(const BivariateLaurent& p, std::int64_t dim) {
  std::vector<HodgeEntry> out;
  for (const auto& [e, c] : p.terms()) {
    if (e.u < 0 || e.v < 0 || e.u > dim || e.v > dim)
      throw MotiveError(ErrorKind::InvalidArgument, "E-polynomial degree exceeds dim");
    std::int64_t n = e.u + e.v;
    out.push_back({dim - e.u, dim - e.v, 2 * dim - n, n % 2 ? Integer(-c) : c});
  }
  std::sort(out.begin(), out.end(), [](const HodgeEntry& x, const HodgeEntry& y) {
    if (x.k != y.k) return x.k < y.k;
    if (x.p != y.p) return x.p < y.p;
    return x.q < y.q;
  });
  return out;
}

MotiveValue geometric_tail(std::int64_t a, std::int64_t K) {
  if (a >= 0) throw MotiveError(ErrorKind::UnsupportedTailExponent, "geometric tail needs a negative rate");
  return MotiveValue::lef(a * K).div_binomial(a, a);
}

MotiveValue geometric_range(std::int64_t a, std::int64_t K0, std::int64_t K1) {
  std::vector<BivariateLaurent::Term> ts;
  for (std::int64_t k = K0; k <= K1; ++k) ts.emplace_back(Exponent{a * k, a * k}, Integer(1));
  return MotiveValue(BivariateLaurent::from_terms(std::move(ts)));
}

}  // namespace motive
