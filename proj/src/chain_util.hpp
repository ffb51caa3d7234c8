#pragma once

#include "motive/curve.hpp"
#include "motive/perturbed.hpp"

#include <cstdint>

namespace motive::detail {

inline MotiveValue L(std::int64_t k) { return MotiveValue::lef(k); }

/// [C^(k)], zero for negative k.
inline MotiveValue sym(const CurveContext& ctx, std::int64_t k) {
  if (k < 0) return {};
  return ctx.sym_curve(static_cast<int>(k));
}

inline PerturbedRational pr(std::int64_t x) { return PerturbedRational(Rational(x)); }

/// a / b for an integer b, as a perturbed rational.
inline PerturbedRational frac(const PerturbedRational& a, std::int64_t b) { return a / Rational(b); }

inline std::int64_t fl(const PerturbedRational& x) { return x.floor(); }
inline std::int64_t cl(const PerturbedRational& x) { return x.ceil(); }

/// Sum over l >= K of L^{a l} [C^(l)] for a <= -2, with K clamped at 0.
inline MotiveValue sym_tail(const CurveContext& ctx, int a, std::int64_t K) {
  return ctx.sym_curve_tail(-a, static_cast<int>(K < 0 ? 0 : K));
}

/// Sum over k >= K of L^{a k} for a < 0.
inline MotiveValue geo_tail(std::int64_t a, std::int64_t K) { return geometric_tail(a, K); }

}  // namespace motive::detail
