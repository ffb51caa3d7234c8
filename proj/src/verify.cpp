#include "motive/verify.hpp"

#include "motive/chains.hpp"
#include "motive/errors.hpp"
#include "motive/higgs.hpp"
#include "motive/random_values.hpp"
#include "motive/series.hpp"

#include <fmt/format.h>

#include <functional>
#include <random>

namespace motive {

void SuiteReport::check(bool ok, const std::string& id) {
  ++total;
  if (!ok) failures.push_back(id);
}

namespace {

MotiveValue L(std::int64_t k) { return MotiveValue::lef(k); }

/// Runs body and records an unexpected MotiveError as a failure of the given check.
void guarded(SuiteReport& r, const std::string& id, const std::function<void()>& body) {
  try {
    body();
  } catch (const MotiveError& e) {
    r.check(false, fmt::format("{} ({})", id, e.what()));
  }
}

/// [Bun_2^d] as the total stack minus the HN strata (1, d1) > (1, d - d1), summed exactly.
MotiveValue bun2_hn_oracle(const CurveContext& c, std::int64_t d) {
  const std::int64_t g = c.genus();
  const std::int64_t first = (d >= 0 ? d / 2 : -((-d + 1) / 2)) + 1;  // least d1 with 2 d1 > d
  const MotiveValue strata = c.upic().pow(2) * L(g - 1 + d - 2 * first) * geometric_tail(-2, 0);
  return c.bun(2) - strata;
}

/// [Bun_3^d] as the total stack minus every HN stratum: types (1,2), (2,1) and (1,1,1).
/// Each family is a geometric series in the degree of the first piece, summed exactly.
MotiveValue bun3_hn_oracle(const CurveContext& c, std::int64_t d) {
  const std::int64_t g = c.genus();
  auto least_above = [](std::int64_t num, std::int64_t den) {  // least x with den * x > num
    std::int64_t q = num / den;
    if (q * den > num) --q;
    return q + 1;
  };
  const MotiveValue tail6 = geometric_tail(-6, 0);
  MotiveAccumulator strata;
  // (1, d1) over (2, d - d1), 3 d1 > d: exponent 2(g-1) + (d - d1) - 2 d1.
  for (std::int64_t d1 = least_above(d, 3), i = 0; i < 2; ++i, ++d1)
    strata.add(c.upic() * c.bun_ss(2, d - d1) * L(2 * g - 2 + d - 3 * d1) * tail6);
  // (2, d1) over (1, d - d1), 3 d1 > 2 d: exponent 2(g-1) + 2(d - d1) - d1.
  for (std::int64_t d1 = least_above(2 * d, 3), i = 0; i < 2; ++i, ++d1)
    strata.add(c.bun_ss(2, d1) * c.upic() * L(2 * g - 2 + 2 * d - 3 * d1) * tail6);
  // (1,a) > (1,b) > (1,c) with x = a - b, y = b - c >= 1 and x + 2y = d - 3c: exponent 3(g-1) - 2(x + y).
  for (std::int64_t x = 1; x <= 3; ++x)
    for (std::int64_t y = 1; y <= 3; ++y)
      if (((x + 2 * y - d) % 3 + 3) % 3 == 0)
        strata.add(c.upic().pow(3) * L(3 * (g - 1) - 2 * (x + y)) * tail6 * tail6);
  return c.bun(3) - strata.result();
}

bool is_symmetric(const BivariateLaurent& p) { return p.swap_uv() == p; }

}  // namespace

SuiteReport ring_suite(std::uint64_t seed, int checks) {
  SuiteReport r{"ring", 0, {}, fmt::format("seed={} checks={}", seed, checks)};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> e(0, 3);
  const int per_round = 5;
  for (int it = 0; r.total + per_round <= static_cast<std::size_t>(checks); ++it) {
    const MotiveValue x = testing::random_value(rng), y = testing::random_value(rng), z = testing::random_value(rng);
    r.check((x + y) + z == x + (y + z), fmt::format("ring.add_assoc#{}", it));
    r.check((x * y) * z == x * (y * z), fmt::format("ring.mul_assoc#{}", it));
    r.check(x * (y + z) == x * y + x * z, fmt::format("ring.distributive#{}", it));
    const MotiveValue again = MotiveValue::fraction(x.num(), x.den());
    r.check(again.num() == x.num() && again.den() == x.den(), fmt::format("ring.reduce_idempotent#{}", it));
    int a = e(rng), b = e(rng);
    if (a == 0 && b == 0) b = 1;
    const MotiveValue factor(BivariateLaurent(1) - BivariateLaurent::monomial(Integer(1), a, b));
    r.check(x.div_binomial(a, b) * factor == x, fmt::format("ring.div_roundtrip#{}", it));
  }
  while (r.total < static_cast<std::size_t>(checks)) {
    const MotiveValue x = testing::random_value(rng), y = testing::random_value(rng);
    r.check(x * y == y * x, fmt::format("ring.mul_comm#{}", r.total));
  }
  return r;
}

SuiteReport curve_suite() {
  SuiteReport r{"curve", 0, {}, ""};
  for (int g = 2; g <= 4; ++g) {
    guarded(r, fmt::format("curve.g{}", g), [&] {
      CurveContext c(g);
      for (int k = 1; k <= 3; ++k)
        r.check(c.p_at_power(-k - 1) == c.p_at_power(k).mul_lef(-g - 2 * g * k),
                fmt::format("curve.functional_equation.g{}.k{}", g, k));
      for (int k = 2 * g - 1; k <= 2 * g + 3; ++k)
        r.check(c.sym_curve(k) == c.upic() * (L(k + 1 - g) - MotiveValue(1)),
                fmt::format("curve.sym_curve_large.g{}.k{}", g, k));
      // Z(C, t)(1 - t)(1 - L t) = P(t) up to order 2g + 4.
      const int ord = 2 * g + 4;
      TruncatedSeries z(ord);
      for (int k = 0; k <= ord; ++k) z[k] = c.sym_curve(k);
      const TruncatedSeries lhs = z * one_minus(MotiveValue(1), 1, ord) * one_minus(lef(), 1, ord);
      for (int i = 0; i <= ord; ++i)
        r.check(lhs[i] == MotiveValue(c.p_coeff(i)), fmt::format("curve.zeta_identity.g{}.t{}", g, i));
      // Finite sums through the zeta function: sum_{k<=M} [C^(k)] L^{Nk} is the t^M coefficient of
      // Z(C,t) / (1 - L^{-N} t), times L^{NM}.
      for (int N = -3; N <= 3; ++N) {
        if (N == 0) continue;
        for (int M = 0; M <= 6; ++M) {
          MotiveValue direct;
          for (int k = 0; k <= M; ++k) direct += c.sym_curve(k).mul_lef(std::int64_t{N} * k);
          TruncatedSeries zm(M);
          for (int k = 0; k <= M; ++k) zm[k] = c.sym_curve(k);
          const TruncatedSeries q = zm * series_invert(one_minus(L(-N), 1, M));
          r.check(q[M].mul_lef(std::int64_t{N} * M) == direct, fmt::format("curve.finite_sum.g{}.N{}.M{}", g, N, M));
        }
      }
      for (int N = 2; N <= 3; ++N)
        for (int K = 0; K <= 6; ++K) {
          MotiveValue s = c.sym_curve_tail(N, K);
          for (int k = 0; k < K; ++k) s += c.sym_curve(k).mul_lef(-std::int64_t{N} * k);
          r.check(s == c.zeta_at_power(-N), fmt::format("curve.tail_sum.g{}.N{}.K{}", g, N, K));
        }
      for (int n = 2; n <= 4; ++n)
        for (int l = 0; l <= 6; ++l) {
          MotiveValue rec;
          for (int k = 0; k <= l; ++k) rec += L(std::int64_t{k} * (n - 1)) * c.sym_proj(n - 1, l - k);
          r.check(c.sym_proj(n, l) == rec, fmt::format("curve.sym_proj_recursion.g{}.n{}.l{}", g, n, l));
        }
    });
  }
  return r;
}

SuiteReport bun_suite() {
  SuiteReport r{"bun", 0, {}, ""};
  for (int g = 2; g <= 4; ++g) {
    guarded(r, fmt::format("bun.g{}", g), [&] {
      CurveContext c(g);
      const MotiveValue p1 = c.p_at_power(0), pl = c.p_at_power(1);
      for (int d = 0; d <= 1; ++d) {
        const MotiveValue closed =
            (p1 * (pl - p1 * L(g - 1 + d))).div_lef_minus_one(1).div_lef_minus_one(1).div_lef_minus_one(2);
        r.check(c.bun_ss(2, d) == closed, fmt::format("bun.rank2_closed.g{}.d{}", g, d));
        r.check(c.bun_ss(2, d) == bun2_hn_oracle(c, d), fmt::format("bun.rank2_hn.g{}.d{}", g, d));
      }
      if (g <= 3)
        for (int d = 0; d <= 2; ++d)
          r.check(c.bun_ss(3, d) == bun3_hn_oracle(c, d), fmt::format("bun.rank3_hn.g{}.d{}", g, d));
      for (int n = 1; n <= 4; ++n)
        for (int d = 0; d < n; ++d) {
          bool integral = true;
          for (const auto& t : c.bun_ss_terms(n, d)) integral = integral && t.exponent.get_den() == 1;
          r.check(integral, fmt::format("bun.integral_exponents.g{}.n{}.d{}", g, n, d));
          r.check(c.bun_ss(n, d) == c.bun_ss(n, d + n), fmt::format("bun.periodic.g{}.n{}.d{}", g, n, d));
        }
    });
  }
  return r;
}

SuiteReport chain_suite() {
  SuiteReport r{"chains", 0, {}, ""};
  for (int g = 2; g <= 3; ++g) {
    guarded(r, fmt::format("chains.g{}", g), [&] {
      CurveContext c(g);
      HNEngine e(c);
      const auto s = higgs_sigma(g);
      const std::int64_t span = 2 * g - 2;
      const auto a2 = arithmetic_alpha(2, s), a3 = arithmetic_alpha(3, s), a4 = arithmetic_alpha(4, s);
      for (std::int64_t d = -1; d <= 2 * span + 3; ++d)
        r.check(e.generic_ss({{2, 1}, {d, 0}, a2}) == m21_ss(c, d, s), fmt::format("chains.m21.g{}.d{}", g, d));
      for (std::int64_t d1 = -1; d1 <= span + 2; ++d1)
        for (std::int64_t d0 = d1 - 1; d0 <= d1 + 2 * span + 2; ++d0)
          r.check(e.generic_ss({{2, 1, 1}, {d0, d1, 0}, a3}) == m211_ss(c, d0, d1, 0, s),
                  fmt::format("chains.m211.g{}.d{},{}", g, d0, d1));
      for (std::int64_t d2 = -1; d2 <= g; ++d2)
        for (std::int64_t d1 = d2 - 1; d1 <= d2 + g + 1; ++d1)
          for (std::int64_t d0 = d1 - 1; d0 <= d1 + g + 1; ++d0)
            r.check(e.generic_ss({{1, 1, 1, 1}, {d0, d1, d2, 0}, a4}) == m1111_ss(c, {d0, d1, d2, 0}, s),
                    fmt::format("chains.m1111.g{}.d{},{},{}", g, d0, d1, d2));

      // Duality is an involution and preserves the class; M(1,2) of degree (d, 0) is M(2,1) of degree (2d, 0).
      for (std::int64_t d1 = 0; d1 <= 3; ++d1)
        for (std::int64_t d0 = d1; d0 <= d1 + 3; ++d0) {
          const ChainSpec spec{{1, 1, 1}, {d0, d1, 0}, a3};
          const ChainSpec twice = dualize(dualize(spec));
          r.check(twice.rank == spec.rank && twice.deg == spec.deg && twice.alpha == spec.alpha,
                  fmt::format("chains.dual_involution.g{}.d{},{}", g, d0, d1));
          r.check(e.generic_ss(spec) == e.generic_ss(dualize(spec)), fmt::format("chains.dual_class.g{}.d{},{}", g, d0, d1));
        }
      for (std::int64_t d = 0; d <= 2 * span; ++d)
        r.check(e.generic_ss({{1, 2}, {d, 0}, a2}) == m21_ss(c, 2 * d, s), fmt::format("chains.m12_is_m21.g{}.d{}", g, d));

      // One step outside each stated emptiness window.
      const std::int64_t lo21 = (s / Rational(2)).ceil(), hi21 = (Rational(2) * s).floor();
      r.check(m21_ss(c, lo21 - 1, s).is_zero() && m21_ss(c, hi21 + 1, s).is_zero(), fmt::format("chains.m21_outside.g{}", g));
      const std::int64_t lo31 = s.ceil(), hi31 = (Rational(3) * s).floor();
      r.check(m31_ss(c, lo31 - 1, s).is_zero() && m31_ss(c, hi31 + 1, s).is_zero(), fmt::format("chains.m31_outside.g{}", g));
      r.check(m211_ss(c, 5, 0, 1, s).is_zero(), fmt::format("chains.m211_outside.g{}", g));
      r.check(m1111_ss(c, {0, 1, 0, 0}, s).is_zero() && m1111_ss(c, {1, 2, 1, 0}, s).is_zero(),
              fmt::format("chains.m1111_outside.g{}", g));
      const std::int64_t four_s = (Rational(4) * s).floor();
      r.check(m121_ss(c, 3, 6, s).is_zero() && m121_ss(c, -1, 1, s).is_zero() && m121_ss(c, 1, 4, s).is_zero() &&
                  m121_ss(c, four_s / 2 + 1, four_s / 2 + 1, s).is_zero(),
              fmt::format("chains.m121_outside.g{}", g));
      const std::int64_t two_s = (Rational(2) * s).floor();
      r.check(m22_ss(c, 0, s).is_zero() && m22_ss(c, two_s + 1, s).is_zero(), fmt::format("chains.m22_outside.g{}", g));
    });
  }
  return r;
}

SuiteReport dualpath_suite() {
  SuiteReport r{"dualpath", 0, {}, ""};
  for (int g = 2; g <= 3; ++g) {
    guarded(r, fmt::format("dualpath.g{}", g), [&] {
      CurveContext c(g);
      const auto s = higgs_sigma(g);
      r.check(m3_class(c).e_poly == m3_class_via_strata(c).e_poly, fmt::format("dualpath.m3.g{}", g));
      r.check(m4_strata_sum(c) == higgs_strata_sum_box(c, 4), fmt::format("dualpath.m4_windows.g{}", g));
      const MotiveValue m2_strata = ((L(1) - MotiveValue(1)) * higgs_strata_sum_box(c, 2)).mul_lef(4 * (g - 1) + 1);
      r.check(m2_strata == m2_closed_form(c), fmt::format("dualpath.m2_strata.g{}", g));
      for (std::int64_t d = s.ceil(); d <= (Rational(3) * s).floor(); ++d)
        r.check(m31_ss(c, d, s) == m31_ss_strata(c, d, s), fmt::format("dualpath.m31_strata.g{}.d{}", g, d));
      for (std::int64_t d = s.ceil(); d <= (Rational(2) * s).floor(); ++d)
        if (d % 2 != 0)
          r.check(m22_ss_large(c, d, s) == m22_ss_strata(c, d, s), fmt::format("dualpath.m22_strata.g{}.d{}", g, d));
    });
  }
  guarded(r, "dualpath.generic_m31", [&] {
    CurveContext c(2);
    HNEngine e(c);
    const auto s = higgs_sigma(2);
    for (std::int64_t d = 1; d <= 7; ++d)
      r.check(e.generic_ss({{3, 1}, {d, 0}, arithmetic_alpha(2, s)}) == m31_ss(c, d, s),
              fmt::format("dualpath.generic_m31.g2.d{}", d));
  });
  return r;
}

SuiteReport higgs_suite(int rank, const std::vector<int>& genera) {
  SuiteReport r{fmt::format("higgs{}", rank), 0, {}, ""};
  std::vector<std::string> conventions;
  for (int g : genera) {
    const std::string tag = fmt::format("higgs{}.g{}", rank, g);
    guarded(r, tag, [&] {
      CurveContext c(g);
      if (rank == 2) r.check(m2_closed_form(c) == m2_zeta_form(c), tag + ".forms_agree");
      const HiggsSpace space = rank == 2 ? HiggsSpace::M2 : rank == 3 ? HiggsSpace::M3 : HiggsSpace::M4;
      const HiggsReport h = report(c, space);
      const BivariateLaurent& p = h.e_poly;
      const std::int64_t dim = higgs_dimension(rank, g);
      r.check(h.dim == dim, tag + ".dimension");
      r.check(p.is_polynomial(), tag + ".polynomial");
      r.check(is_symmetric(p), tag + ".uv_symmetric");
      r.check(p.max_total_degree() == 2 * dim && p.coeff(dim, dim) == 1 && p.top_part().size() == 1, tag + ".top_term");
      r.check(p.eval(Rational(1), Rational(1)) == 0, tag + ".euler_characteristic");
      bool nonneg = true;
      for (const auto& b : h.betti) nonneg = nonneg && b >= 0;
      r.check(nonneg, tag + ".betti_nonnegative");
      r.check(!h.betti.empty() && h.betti.front() == 1, tag + ".b0");
      conventions.push_back(h.prefactor_convention);
    });
  }
  bool consistent = !conventions.empty();
  for (const auto& s : conventions) consistent = consistent && s == conventions.front();
  r.check(consistent, fmt::format("higgs{}.prefactor_consistent", rank));
  if (!conventions.empty()) r.note = "prefactor " + conventions.front();
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"ring", "curve", "chains", "dualpath", "higgs"};
  return names;
}

std::vector<SuiteReport> run_suite(const std::string& name) {
  if (name == "ring") return {ring_suite()};
  if (name == "curve") return {curve_suite(), bun_suite()};
  if (name == "chains") return {chain_suite()};
  if (name == "dualpath") return {dualpath_suite()};
  if (name == "higgs") return {higgs_suite(2, {2, 3, 4, 5, 6}), higgs_suite(3, {2, 3}), higgs_suite(4, {2, 3})};
  throw MotiveError(ErrorKind::InvalidArgument, "unknown suite '" + name + "'");
}

}  // namespace motive
