#include "doctest.h"
#include "motive/errors.hpp"
#include "motive/higgs.hpp"

#include <functional>

using namespace motive;

namespace {

MotiveValue L(std::int64_t k) { return MotiveValue::lef(k); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const MotiveError& e) {
    return e.kind();
  }
  FAIL("expected a MotiveError");
  return ErrorKind::InvalidArgument;
}

std::vector<Integer> to_integers(std::initializer_list<long> xs) {
  std::vector<Integer> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

/// Polynomial product of integer coefficient lists.
std::vector<Integer> poly_mul(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  std::vector<Integer> c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

std::vector<Integer> one_plus_t_pow(int k) {
  std::vector<Integer> p = {Integer(1)};
  for (int i = 0; i < k; ++i) p = poly_mul(p, to_integers({1, 1}));
  return p;
}

/// Exact quotient by a monic polynomial with constant term 1; empty if the division leaves a remainder.
std::vector<Integer> poly_div_exact(std::vector<Integer> a, const std::vector<Integer>& b) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  if (a.size() < b.size()) return {};
  std::vector<Integer> q(a.size() - b.size() + 1);
  for (std::size_t i = 0; i < q.size(); ++i) {
    q[i] = a[i];
    for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= q[i] * b[j];
  }
  for (const auto& x : a)
    if (x != 0) return {};
  return q;
}

}  // namespace

TEST_CASE("dimension and names") {
  CHECK(higgs_dimension(2, 2) == 10);
  CHECK(higgs_dimension(3, 2) == 20);
  CHECK(higgs_dimension(4, 2) == 34);
  CHECK(higgs_dimension(4, 3) == 66);
  CHECK(higgs_space_name(HiggsSpace::M4) == "higgs4");
  CHECK(higgs_rank(HiggsSpace::M3) == 3);
}

TEST_CASE("rank 2: both closed forms agree and satisfy the invariants") {
  for (int g = 2; g <= 6; ++g) {
    CAPTURE(g);
    CurveContext c(g);
    CHECK(m2_closed_form(c) == m2_zeta_form(c));
    const HiggsReport r = m2_class(c);
    CHECK(r.dim == 8 * g - 6);
    CHECK(r.e_poly.max_total_degree() == 2 * (8 * g - 6));
    CHECK(r.e_poly.coeff(r.dim, r.dim) == 1);
    CHECK(r.betti.size() == static_cast<std::size_t>(2 * r.dim + 1));
    CHECK(r.betti.front() == 1);
    CHECK(r.prefactor_convention == "L^(4(g-1)+1)");
  }
}

TEST_CASE("rank 2 from the fixed-point strata") {
  for (int g = 2; g <= 4; ++g) {
    CurveContext c(g);
    // (L - 1)([Bun_2^{1,ss}] + sum over odd e < 2g - 2 of [uPic][C^(e)])
    MotiveAccumulator acc;
    acc.add(c.bun_ss(2, 1));
    for (int e = 1; e <= 2 * g - 3; e += 2) acc.add(c.upic() * c.sym_curve(e));
    const MotiveValue strata = ((L(1) - MotiveValue(1)) * acc.result()).mul_lef(4 * (g - 1) + 1);
    CHECK(strata == m2_closed_form(c));
    CHECK(((L(1) - MotiveValue(1)) * higgs_strata_sum_box(c, 2)).mul_lef(4 * (g - 1) + 1) == m2_closed_form(c));
  }
}

TEST_CASE("rank 2, g = 2: Betti numbers") {
  // The invariant part of the fixed-determinant space has Poincare polynomial
  // 1 + t^2 + 4t^3 + 2t^4 + 4t^5 + 2t^6, and the Jacobian contributes (1 + t)^4.
  CurveContext c(2);
  const auto expected = poly_mul(to_integers({1, 0, 1, 4, 2, 4, 2}), one_plus_t_pow(4));
  auto betti = m2_class(c).betti;
  while (betti.back() == 0) betti.pop_back();
  CHECK(betti == expected);
}

TEST_CASE("rank 3: closed form equals the strata assembly") {
  for (int g = 2; g <= 4; ++g) {
    CAPTURE(g);
    CurveContext c(g);
    const HiggsReport a = m3_class(c);
    const HiggsReport b = m3_class_via_strata(c);
    CHECK(a.e_poly == b.e_poly);
    CHECK(a.dim == 18 * g - 16);
    CHECK(a.prefactor_convention == "L^(9(g-1)+1)");
    CHECK(a.provenance.find("rejected") != std::string::npos);
  }
}

TEST_CASE("rank 4: listed windows equal the box enumeration") {
  for (int g = 2; g <= 3; ++g) {
    CAPTURE(g);
    CurveContext c(g);
    CHECK(m4_strata_sum(c) == higgs_strata_sum_box(c, 4));
  }
}

TEST_CASE("rank 4: invariants and a consistent prefactor") {
  for (int g = 2; g <= 4; ++g) {
    CAPTURE(g);
    CurveContext c(g);
    const HiggsReport r = m4_class(c);
    CHECK(r.dim == 32 * g - 30);
    CHECK(r.prefactor_convention == "L^(16(g-1)+1)");
    CHECK(r.betti.size() == static_cast<std::size_t>(2 * r.dim + 1));
  }
  CurveContext c(2);
  CHECK(report(c, HiggsSpace::M4).betti.size() == 69);
  CHECK(report(c, HiggsSpace::M2).betti.size() == 21);
}

TEST_CASE("Poincare polynomials split off the Jacobian factor") {
  for (int g = 2; g <= 3; ++g) {
    CurveContext c(g);
    for (auto s : {HiggsSpace::M2, HiggsSpace::M3, HiggsSpace::M4}) {
      CAPTURE(g);
      CAPTURE(higgs_rank(s));
      const auto q = poly_div_exact(report(c, s).betti, one_plus_t_pow(2 * g));
      REQUIRE(!q.empty());
      for (const auto& x : q) CHECK(x >= 0);
      CHECK(q[1] == 0);  // the invariant part is simply connected in degree 1
    }
  }
}

TEST_CASE("frozen rank 3 and rank 4 Betti numbers at g = 2") {
  CurveContext c(2);
  auto b3 = m3_class(c).betti;
  while (b3.back() == 0) b3.pop_back();
  CHECK(b3 == poly_mul(to_integers({1, 0, 1, 4, 3, 8, 10, 16, 29, 32, 48, 64, 67, 68, 48, 24, 6}), one_plus_t_pow(4)));
  auto b4 = m4_class(c).betti;
  while (b4.back() == 0) b4.pop_back();
  CHECK(b4 == to_integers({1,     4,     7,     12,    26,    48,    78,    128,   212,   336,   506,   756,
                           1128,  1640,  2324,  3264,  4558,  6248,  8382,  11092, 14468, 18424, 22744, 27144,
                           31055, 33460, 33305, 30012, 23804, 16024, 8792,  3752,  1164,  232,   22}));
}

TEST_CASE("hodge entries are consistent with the Betti numbers") {
  CurveContext c(2);
  const HiggsReport r = m3_class(c);
  std::vector<Integer> from_hodge(r.betti.size());
  for (const auto& h : r.hodge) from_hodge[static_cast<std::size_t>(h.k)] += h.h;
  CHECK(from_hodge == r.betti);
}

TEST_CASE("reports are deterministic") {
  CurveContext a(3), b(3);
  const HiggsReport x = report(a, HiggsSpace::M4), y = report(b, HiggsSpace::M4);
  CHECK(x.e_poly == y.e_poly);
  CHECK(x.betti == y.betti);
  CHECK(x.provenance == y.provenance);
}

TEST_CASE("report checks and prefactor errors") {
  CHECK(kind_of([] { make_higgs_report(2, 2, MotiveValue(1).div_binomial(1, 1), "", ""); }) ==
        ErrorKind::ResidualDenominator);
  // Wrong top degree.
  CHECK(kind_of([] { make_higgs_report(2, 2, L(9) - L(0), "", ""); }) == ErrorKind::InvariantViolation);
  // Top monomial fine but E(1,1) != 0.
  CHECK(kind_of([] { make_higgs_report(2, 2, L(10), "", ""); }) == ErrorKind::InvariantViolation);
  // Not symmetric.
  CHECK(kind_of([] {
          make_higgs_report(2, 2, L(10) - MotiveValue(BivariateLaurent::monomial(Integer(1), 1, 0)), "", "");
        }) == ErrorKind::InvariantViolation);
  // Negative Betti number: (uv)^10 - 2 uv + 1 has b_18 = -2.
  CHECK(kind_of([] { make_higgs_report(2, 2, L(10) - L(1).scaled(Integer(2)) + MotiveValue(1), "", ""); }) ==
        ErrorKind::InvariantViolation);
  const MotiveValue core = L(6);  // needs exponent 4 to reach top degree 20
  CHECK(select_prefactor(core, 2, 2, {0, 1}, 0).label == "L^(4(g-1))");
  CHECK(kind_of([&] { select_prefactor(core, 2, 2, {1, 2}, 1); }) == ErrorKind::PrefactorUnresolvable);
  CHECK(kind_of([&] { select_prefactor(MotiveValue(), 2, 2, {0}, 0); }) == ErrorKind::PrefactorUnresolvable);
}

TEST_CASE("chain_ss dispatch") {
  CurveContext c(2);
  const auto s = higgs_sigma(2);
  HNEngine engine(c);
  // Twisting does not change the class.
  CHECK(chain_ss(c, {2, 1}, {7, 1}, s) == m21_ss(c, 5, s));
  CHECK(chain_ss(c, {3, 1}, {9, 1}, s) == m31_ss(c, 6, s));
  // Reversed shapes go through the dual.
  for (std::int64_t d0 = -2; d0 <= 6; ++d0) {
    CAPTURE(d0);
    CHECK(chain_ss(c, {1, 2}, {d0, 0}, s) == engine.generic_ss({{1, 2}, {d0, 0}, arithmetic_alpha(2, s)}));
  }
  // Zero ranks at the ends are dropped.
  CHECK(chain_ss(c, {0, 2, 1}, {0, 5, 0}, s) == m21_ss(c, 5, s));
  CHECK(chain_ss(c, {2}, {1}, s) == c.bun_ss(2, 1));
  CHECK(kind_of([&] { chain_ss(c, {1, 0, 1}, {0, 0, 0}, s); }) == ErrorKind::UnsupportedRank);
  // (2,2): the two regimes and emptiness outside (0, 2 sigma).
  CHECK(m22_ss(c, 1, s) == m22_ss_small(c, 1, s));
  CHECK(m22_ss(c, 3, s) == m22_ss_large(c, 3, s));
  CHECK(m22_ss(c, 5, s).is_zero());
  CHECK(m22_ss(c, -1, s).is_zero());
  CHECK(chain_ss(c, {2, 2}, {4, 1}, s) == m22_ss(c, 3, s));
}
