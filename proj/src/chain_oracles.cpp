#include "motive/chains.hpp"

#include "chain_util.hpp"
#include "motive/errors.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace motive {

using detail::cl;
using detail::fl;
using detail::frac;
using detail::geo_tail;
using detail::L;
using detail::pr;
using detail::sym;

MotiveValue sum_quasi_geometric(const std::function<MotiveValue(std::int64_t)>& F, std::int64_t K,
                                const std::vector<std::int64_t>& rates, int period) {
  if (period < 1 || rates.empty()) throw MotiveError(ErrorKind::InvalidArgument, "empty rate set or period");
  if (std::set<std::int64_t>(rates.begin(), rates.end()).size() != rates.size())
    throw MotiveError(ErrorKind::InvalidArgument, "repeated rate");
  for (auto r : rates)
    if (r >= 0) throw MotiveError(ErrorKind::InvalidArgument, "rates must be negative");
  const std::size_t s = rates.size();
  const std::vector<std::int64_t>& z = rates;  // L^{z_t} per step

  MotiveAccumulator total;
  for (int rho = 0; rho < period; ++rho) {
    std::vector<MotiveValue> y(s + 3);
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = F(K + rho + static_cast<std::int64_t>(period * j));
    // y_j = sum_t a_t z_t^j: solve with the Lagrange basis of the shift operator.
    std::vector<MotiveValue> a(s);
    for (std::size_t t = 0; t < s; ++t) {
      std::vector<MotiveValue> c{MotiveValue(1)};
      for (std::size_t i = 0; i < s; ++i) {
        if (i == t) continue;
        std::vector<MotiveValue> next(c.size() + 1);
        for (std::size_t j = 0; j < c.size(); ++j) {
          next[j + 1] += c[j];
          next[j] -= c[j].mul_lef(z[i]);
        }
        c = std::move(next);
      }
      MotiveAccumulator num;
      for (std::size_t j = 0; j < c.size(); ++j) num.add(c[j] * y[j]);
      MotiveValue v = num.result();
      for (std::size_t i = 0; i < s; ++i)
        if (i != t) v = v.mul_lef(-z[i]).div_lef_minus_one(z[t] - z[i]);
      a[t] = v;
    }
    for (std::size_t j = s; j < y.size(); ++j) {
      MotiveAccumulator pred;
      for (std::size_t t = 0; t < s; ++t) pred.add(a[t].mul_lef(z[t] * static_cast<std::int64_t>(j)));
      if (!(pred.result() == y[j]))
        throw MotiveError(ErrorKind::InvariantViolation, "sequence is not quasi-geometric with the given rates");
    }
    for (std::size_t t = 0; t < s; ++t) total.add(a[t].div_binomial(z[t], z[t]));
  }
  return total.result();
}

MotiveValue sym_curve_tail_congruent(const CurveContext& ctx, int N, std::int64_t K, int modulus, int residue) {
  if (N < 2 || modulus < 1) throw MotiveError(ErrorKind::InvalidArgument, "need N >= 2 and modulus >= 1");
  const std::int64_t g = ctx.genus();
  std::int64_t start = std::max<std::int64_t>(K, 0);
  const std::int64_t shift = ((residue - start) % modulus + modulus) % modulus;
  start += shift;
  // Beyond 2g - 2, [C^(l)] = [Pic](L^{l+1-g} - 1), so the tail is two geometric series.
  const std::int64_t cut = std::max(start, 2 * g - 1 + ((residue - (2 * g - 1)) % modulus + modulus) % modulus);
  MotiveAccumulator acc;
  for (std::int64_t l = start; l < cut; l += modulus) acc.add(sym(ctx, l).mul_lef(-N * l));
  const MotiveValue a = geometric_tail((1 - N) * modulus, 0).mul_lef((1 - N) * cut + 1 - g);
  const MotiveValue b = geometric_tail(-N * modulus, 0).mul_lef(-N * cut);
  acc.add(ctx.upic() * (a - b));
  return acc.result();
}

MotiveValue bun2_min_slope(const CurveContext& ctx, std::int64_t e, const PerturbedRational& h) {
  if (frac(pr(e), 2) <= h) return {};
  const std::int64_t g = ctx.genus();
  const std::int64_t k0 = std::max(fl(frac(pr(e), 2)) + 1, cl(pr(e) - h));
  // Unstable strata with quotient slope e - k <= h.
  const MotiveValue strata = (ctx.upic().pow(2) * geo_tail(-2, k0)).mul_lef(g - 1 + e);
  return ctx.bun(2) - strata;
}

namespace {

/// Coefficients a_t with y_j = sum_t a_t z_t^j for j < s, or nothing when the extra samples disagree.
std::optional<std::vector<Rational>> fit_numeric(const std::vector<Rational>& y, const std::vector<Rational>& z) {
  const std::size_t s = z.size();
  std::vector<Rational> a(s);
  for (std::size_t t = 0; t < s; ++t) {
    std::vector<Rational> c{Rational(1)};
    Rational den = 1;
    for (std::size_t i = 0; i < s; ++i) {
      if (i == t) continue;
      std::vector<Rational> next(c.size() + 1, Rational(0));
      for (std::size_t j = 0; j < c.size(); ++j) {
        next[j + 1] += c[j];
        next[j] -= c[j] * z[i];
      }
      c = std::move(next);
      den *= z[t] - z[i];
    }
    Rational num = 0;
    for (std::size_t j = 0; j < c.size(); ++j) num += c[j] * y[j];
    a[t] = num / den;
  }
  for (std::size_t j = s; j < y.size(); ++j) {
    Rational pred = 0;
    for (std::size_t t = 0; t < s; ++t) {
      mpq_class p = 1;
      for (std::size_t k = 0; k < j; ++k) p *= z[t];
      pred += a[t] * p;
    }
    if (pred != y[j]) return std::nullopt;
  }
  return a;
}

}  // namespace

MotiveValue sum_quasi_geometric_auto(const std::function<MotiveValue(std::int64_t)>& F, std::int64_t K,
                                     int period) {
  // Candidates are screened at a rational point; the exact fit then uses only the surviving rates.
  const Rational u0(3, 7), v0(5, 11);
  const Rational lef0 = u0 * v0;
  std::map<std::int64_t, MotiveValue> cache;
  std::map<std::int64_t, Rational> numeric;
  auto cached = [&](std::int64_t k) -> const MotiveValue& {
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    return cache.emplace(k, F(k)).first->second;
  };
  auto value_at = [&](std::int64_t k) -> const Rational& {
    auto it = numeric.find(k);
    if (it != numeric.end()) return it->second;
    return numeric.emplace(k, cached(k).eval(u0, v0)).first->second;
  };
  static const std::pair<int, int> attempts[] = {{0, 4},  {4, 4},  {0, 8},   {4, 8},  {16, 4}, {16, 8},
                                                 {0, 16}, {4, 16}, {16, 16}, {0, 32}, {16, 32}};
  for (auto [offset, R] : attempts) {
    const std::int64_t start = K + static_cast<std::int64_t>(offset) * period;
    std::vector<Rational> z(static_cast<std::size_t>(R));
    Rational zi = 1;
    for (int r = 1; r <= R; ++r) {
      zi /= lef0;
      z[static_cast<std::size_t>(r - 1)] = zi;
    }
    std::set<std::int64_t> support;
    bool ok = true;
    for (int rho = 0; rho < period && ok; ++rho) {
      std::vector<Rational> y(static_cast<std::size_t>(R) + 3);
      for (std::size_t j = 0; j < y.size(); ++j) y[j] = value_at(start + rho + static_cast<std::int64_t>(period * j));
      auto a = fit_numeric(y, z);
      if (!a) {
        ok = false;
        break;
      }
      for (int r = 1; r <= R; ++r)
        if ((*a)[static_cast<std::size_t>(r - 1)] != 0) support.insert(-r);
    }
    if (!ok) continue;
    MotiveAccumulator acc;
    for (std::int64_t k = K; k < start; ++k) acc.add(cached(k));
    if (support.empty()) {
      // The samples vanish at the test point; confirm exactly.
      bool zero = true;
      for (int rho = 0; rho < period; ++rho)
        for (int j = 0; j < R + 3; ++j) zero = zero && cached(start + rho + static_cast<std::int64_t>(period) * j).is_zero();
      if (zero) return acc.result();
      continue;
    }
    try {
      acc.add(sum_quasi_geometric(cached, start, std::vector<std::int64_t>(support.begin(), support.end()), period));
      return acc.result();
    } catch (const MotiveError& e) {
      if (e.kind() != ErrorKind::InvariantViolation) throw;
    }
  }
  throw MotiveError(ErrorKind::InvariantViolation, "no quasi-geometric fit found");
}

namespace {

/// Direct prefix up to a point past which F is quasi-geometric, then the fitted tail.
MotiveValue tail_sum(const std::function<MotiveValue(std::int64_t)>& F, std::int64_t K, std::int64_t K_fit,
                     const std::vector<std::int64_t>& rates, int period) {
  MotiveAccumulator acc;
  const std::int64_t start = std::max(K, K_fit);
  for (std::int64_t k = K; k < start; ++k) acc.add(F(k));
  acc.add(sum_quasi_geometric(F, start, rates, period));
  return acc.result();
}

}  // namespace

MotiveValue m31_ss_strata(const CurveContext& ctx, std::int64_t d0, const PerturbedRational& sigma) {
  const PerturbedRational d = pr(d0);
  if (d < sigma || d > Rational(3) * sigma) return {};
  const std::int64_t g = ctx.genus();
  const MotiveValue& upic = ctx.upic();
  const std::int64_t K_fit = d0 + 2 * g + 4;

  const MotiveValue open = m_m1_open(ctx, 3, d0, 0);

  // Type (2,1)(1,0): sub chain of degree (k, 0) with all HN slopes above d - k.
  const std::int64_t k21 = fl(frac(Rational(3) * d - sigma, 4)) + 1;
  const MotiveValue t21 = tail_sum(
      [&](std::int64_t k) {
        return (upic * m21_min_slope(ctx, k, sigma, pr(d0 - k))).mul_lef(2 * d0 - 3 * k + 2 * g - 2);
      },
      k21, K_fit, {-1, -2, -3, -4, -5, -6}, 1);

  // Type (2,0)(1,1): l is the torsion of the quotient line.
  MotiveAccumulator t20;
  const std::int64_t top20 = cl(frac(d - sigma, 2)) - 1;
  for (std::int64_t l = 0; l <= top20; ++l)
    t20.add((upic * sym(ctx, l) * bun2_min_slope(ctx, d0 - l, frac(pr(l) + sigma, 2))).mul_lef(2 * l));

  // Type (1,1)(2,0).
  const std::int64_t l11 = fl(frac(d - sigma, 2)) + 1;
  const MotiveValue t11 = tail_sum(
      [&](std::int64_t l) {
        return (upic * sym(ctx, l) * ctx.bun_ss(2, d0 - l)).mul_lef(2 * g - 2 + d0 - 3 * l);
      },
      l11, K_fit, {-1, -2, -3, -4, -5, -6, -7, -8}, 2);

  // Type (2,1)(1,0) with a semistable (2,1) sub chain of degree (d - l, 0) after a twist.
  MotiveAccumulator t10;
  const std::int64_t lo10 = fl(frac(d + sigma, 4)) + 1;
  const std::int64_t hi10 = cl(d - frac(sigma, 2)) - 1;
  for (std::int64_t l = lo10; l <= hi10; ++l) t10.add(m21_ss(ctx, d0 - l, sigma).mul_lef(-2 * l));
  const MotiveValue t10v = (upic * t10.result()).mul_lef(g - 1 + d0);

  return open - t21 - t20.result() - t11 - t10v;
}

MotiveValue m22_ss_strata(const CurveContext& ctx, std::int64_t d0, const PerturbedRational& sigma) {
  const MotiveValue fin = m22_fin(ctx, d0, sigma);  // also validates the regime
  const PerturbedRational d = pr(d0);
  const std::int64_t g = ctx.genus();
  const MotiveValue& upic = ctx.upic();
  const MotiveValue upic2 = upic.pow(2);
  const MotiveValue upic3 = upic.pow(3);
  const PerturbedRational s2 = frac(sigma, 2), s4 = frac(sigma, 4), d2 = frac(d, 2), d4 = frac(d, 4);
  const std::int64_t top_l = fl(d - sigma);
  auto zero_clamp = [](std::int64_t x) { return std::max<std::int64_t>(x, 0); };

  // Sum over l in [lo, top_l] of L^{a l + b} [C^(l)].
  auto lsum = [&](std::int64_t lo, std::int64_t hi, std::int64_t a, std::int64_t b) {
    MotiveAccumulator acc;
    for (std::int64_t l = zero_clamp(lo); l <= hi; ++l) acc.add(sym(ctx, l).mul_lef(a * l + b));
    return acc.result();
  };

  const std::int64_t lo1 = fl(s2 - d4) + 1;

  // S1: a (1,0) quotient bundle below a semistable (2,1) sub chain.
  MotiveAccumulator s1;
  for (std::int64_t x = lo1; x <= cl(d2 - s4) - 1; ++x) s1.add(m21_ss(ctx, d0 - 2 * x, sigma));
  const MotiveValue S1 = (upic * s1.result()).mul_lef(d0 - (g - 1));

  // S2 and the part of it outside M^fin.
  MotiveAccumulator s2a;
  const std::int64_t hi2 = fl(d2 - s4);
  for (std::int64_t x = lo1; x <= hi2; ++x)
    s2a.add(lsum(fl(frac(Rational(2) * d - Rational(4 * x) - sigma, 3)) + 1, top_l, -2, 2 * d0 - 2 * x));
  s2a.add(geo_tail(-2, hi2 + 1) * lsum(0, top_l, -2, 2 * d0));
  const MotiveValue S2 = upic3 * s2a.result();

  MotiveAccumulator s2b;
  const std::int64_t hi2o = fl(Rational(3) * d4 - s2);
  for (std::int64_t x = lo1; x <= hi2o; ++x) s2b.add(lsum(hi2o + 1 - x, top_l, -1, -2 * x + d0 + g - 1));
  s2b.add(geo_tail(-2, hi2o + 1) * lsum(0, top_l, -1, d0 + g - 1));
  const MotiveValue S2out = upic3 * s2b.result();

  // S3.
  MotiveAccumulator s3;
  const std::int64_t mid3 = fl(s4);
  for (std::int64_t x = lo1; x <= mid3; ++x)
    s3.add(lsum(fl(sigma) + 1 - 4 * x, cl(frac(Rational(2) * d - Rational(4 * x) - sigma, 3)) - 1, 1, 0));
  for (std::int64_t x = mid3 + 1; x <= hi2; ++x)
    s3.add(lsum(0, cl(frac(Rational(2) * d - Rational(4 * x) - sigma, 3)) - 1, 1, 0));
  const MotiveValue S3 = (upic3 * s3.result()).mul_lef(d0 - (g - 1));

  // S4: split k by parity; j runs over the same parity as k.
  MotiveAccumulator acc4;
  const std::int64_t k4 = d0 / 2 + 1;
  for (int parity = 0; parity < 2; ++parity) {
    const std::int64_t k_first = k4 + (((parity - k4) % 2) + 2) % 2;
    MotiveAccumulator inner;
    for (std::int64_t j = d0 - fl(sigma); j <= fl(sigma); ++j)
      if (((j - parity) % 2 + 2) % 2 == 0) inner.add(sym(ctx, j) * sym(ctx, d0 - j));
    acc4.add((inner.result() * geo_tail(-2, 0)).mul_lef(-k_first));
  }
  const MotiveValue S4 = (upic2 * acc4.result()).mul_lef(g - 1 + d0);

  // S5 and the part of it outside M^fin.
  MotiveAccumulator s5a;
  const std::int64_t lo5 = fl(d4 + s2) + 1;
  const std::int64_t hi5 = fl(d - s4);
  for (std::int64_t y = lo5; y <= hi5; ++y)
    s5a.add(lsum(fl(frac(d - pr(y) - sigma, 3)) + 1 + d0 - y, top_l, -2, -2 * y));
  s5a.add(geo_tail(-2, hi5 + 1) * lsum(0, top_l, -2, 0));
  const MotiveValue S5 = (upic3 * s5a.result()).mul_lef(3 * d0);

  MotiveAccumulator s5b;
  const std::int64_t hi5o = fl(Rational(5) * d4 - s2);
  for (std::int64_t y = lo5; y <= hi5o; ++y) s5b.add(lsum(hi5o + 1 - y, top_l, -1, g - 1 + 2 * d0 - 2 * y));
  s5b.add(geo_tail(-2, hi5o + 1) * lsum(0, top_l, -1, g - 1 + 2 * d0));
  const MotiveValue S5out = upic3 * s5b.result();

  // S6: a semistable (1,2) quotient, identified with a (2,1) chain by duality.
  MotiveAccumulator s6;
  for (std::int64_t y = fl(frac(d + Rational(2) * sigma, 4)) + 1; y <= hi5; ++y)
    s6.add(m21_ss(ctx, 2 * d0 - 2 * y, sigma));
  const MotiveValue S6 = (upic * s6.result()).mul_lef(d0 - (g - 1));

  return fin - S1 - (S2 - S2out) - S3 - S4 - (S5 - S5out) - S6;
}

}  // namespace motive
