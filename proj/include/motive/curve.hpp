#pragma once

#include "motive/memo.hpp"
#include "motive/motive_value.hpp"
#include "motive/series.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace motive {

/// E-image of the Lefschetz class, uv.
MotiveValue lef();

/// One composition n = n_1 + ... + n_s in the closed formula for semistable bundles,
/// with its exactly accumulated L-exponent.
struct HNCompositionTerm {
  std::vector<int> parts;
  Rational exponent;
};

/// A fixed curve of genus g >= 2 together with memo tables for its building blocks.
class CurveContext {
 public:
  explicit CurveContext(int genus);

  int genus() const { return g_; }

  /// Coefficient of t^i in (1 - tu)^g (1 - tv)^g.
  const BivariateLaurent& p_coeff(int i) const;
  /// (1 - u^{k+1} v^k)^g (1 - u^k v^{k+1})^g.
  const MotiveValue& p_at_power(std::int64_t k) const;
  /// P(1) / (L - 1).
  const MotiveValue& upic() const;
  /// [C^(k)], the k-th symmetric power of the curve.
  const MotiveValue& sym_curve(int k) const;
  /// P(L^m) / ((1 - L^m)(1 - L^{m+1})); PoleAtUnit for m in {0, -1}.
  const MotiveValue& zeta_at_power(std::int64_t m) const;
  /// Sum over k >= K of [C^(k)] L^{-N k}; UnsupportedTailExponent for N < 2.
  MotiveValue sym_curve_tail(int N, int K) const;
  /// [Sym^l(P^{n-1})].
  const MotiveValue& sym_proj(int n, int l) const;
  /// [(C x P^{n-1})^(l)].
  const MotiveValue& sym_curve_proj(int n, int l) const;
  /// Sum over e of [C^(e)][C^(d-e)].
  const MotiveValue& sym_two_curves(int d) const;
  /// [Bun_n^d], independent of d.
  const MotiveValue& bun(int n) const;
  /// [Bun_n^{d,ss}] from the alternating composition sum.
  const MotiveValue& bun_ss(int n, std::int64_t d) const;
  /// The composition terms of bun_ss with their exponents (for integrality checks).
  std::vector<HNCompositionTerm> bun_ss_terms(int n, std::int64_t d) const;

 private:
  int g_;
  std::vector<BivariateLaurent> p_coeffs_;
  MemoTable<std::int64_t, MotiveValue> p_at_;
  MemoTable<int, MotiveValue> upic_;
  MemoTable<int, MotiveValue> sym_curve_;
  MemoTable<std::int64_t, MotiveValue> zeta_;
  MemoTable<std::pair<int, int>, MotiveValue> sym_proj_;
  MemoTable<std::pair<int, int>, MotiveValue> sym_curve_proj_;
  MemoTable<int, MotiveValue> sym_two_;
  MemoTable<int, MotiveValue> bun_;
  MemoTable<std::pair<int, std::int64_t>, MotiveValue> bun_ss_;
};

/// Betti numbers b_0..b_{2 dim} of a pure space with E-polynomial p: P(t) = t^{2dim} E(-1/t, -1/t).
std::vector<Integer> e_to_poincare(const BivariateLaurent& p, std::int64_t dim);

/// One weighted entry h^{p,q} in cohomological degree k.
struct HodgeEntry {
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::int64_t k = 0;
  Integer h;
  bool operator==(const HodgeEntry&) const = default;
};

/// Coefficients of (uvt^2)^dim E(-1/(ut), -1/(vt)), sorted by (k, p, q).
std::vector<HodgeEntry> e_to_hodge(const BivariateLaurent& p, std::int64_t dim);

/// Sum of L^{a k} over k >= K as an exact fraction (a < 0 required).
MotiveValue geometric_tail(std::int64_t a, std::int64_t K);
/// Sum of L^{a k} over K0 <= k <= K1 (0 when K1 < K0).
MotiveValue geometric_range(std::int64_t a, std::int64_t K0, std::int64_t K1);

}  // namespace motive
