#pragma once

#include "motive/laurent.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace motive {

/// (1 - u^a v^b)^mult with a, b >= 0 and (a, b) != (0, 0).
struct BinomialFactor {
  std::int64_t a = 0;
  std::int64_t b = 0;
  int mult = 1;
  bool operator==(const BinomialFactor&) const = default;
};

/// num / den with den a canonical multiset of binomials; num is not exactly
/// divisible by any listed factor. Zero has an empty den.
class MotiveValue {
 public:
  MotiveValue() = default;
  MotiveValue(long c) : num_(c) {}  // NOLINT
  MotiveValue(const Integer& c) : num_(c) {}  // NOLINT
  MotiveValue(BivariateLaurent p) : num_(std::move(p)) {}  // NOLINT

  /// Builds and reduces num / den. Factors may repeat and appear in any order.
  static MotiveValue fraction(BivariateLaurent num, std::vector<BinomialFactor> den);
  /// (uv)^k.
  static MotiveValue lef(std::int64_t k = 1);

  const BivariateLaurent& num() const { return num_; }
  const std::vector<BinomialFactor>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }

  friend MotiveValue operator+(const MotiveValue& x, const MotiveValue& y);
  friend MotiveValue operator-(const MotiveValue& x, const MotiveValue& y);
  friend MotiveValue operator*(const MotiveValue& x, const MotiveValue& y);
  MotiveValue operator-() const;
  MotiveValue& operator+=(const MotiveValue& y) { return *this = *this + y; }
  MotiveValue& operator-=(const MotiveValue& y) { return *this = *this - y; }
  MotiveValue& operator*=(const MotiveValue& y) { return *this = *this * y; }
  /// Exact equality of the represented rational functions.
  bool operator==(const MotiveValue& y) const;

  MotiveValue pow(unsigned k) const;
  /// Multiplies by (uv)^k.
  MotiveValue mul_lef(std::int64_t k) const;
  MotiveValue scaled(const Integer& c) const;
  /// Divides by (1 - u^a v^b); (a, b) may both be nonpositive, then the sign and monomial move to num.
  MotiveValue div_binomial(std::int64_t a, std::int64_t b, int mult = 1) const;
  /// Divides by (L^n - 1) for n != 0.
  MotiveValue div_lef_minus_one(std::int64_t n) const;
  /// Exact division by an integer; throws InvalidArgument if the numerator content is not divisible.
  MotiveValue div_integer(const Integer& c) const;
  /// Multiplicative inverse; only available when num is a signed unit monomial.
  MotiveValue inverse() const;
  MotiveValue swap_uv() const;

  /// Exact value at rational (u0, v0); throws PoleAtPoint if a den factor vanishes there.
  Rational eval(const Rational& u0, const Rational& v0) const;
  /// The numerator if den is empty; throws ResidualDenominator otherwise.
  const BivariateLaurent& to_polynomial() const;
  /// Leading total (u, v)-degree of the expansion at infinity; requires nonzero.
  std::int64_t top_total_degree() const;

  std::string to_string() const;

 private:
  BivariateLaurent num_;
  std::vector<BinomialFactor> den_;
  void reduce();
  friend class MotiveAccumulator;
};

/// Sums many MotiveValues over a growing common denominator with one reduction at the end.
class MotiveAccumulator {
 public:
  void add(const MotiveValue& x);
  void sub(const MotiveValue& x);
  MotiveValue result() const;

 private:
  BivariateLaurent num_;
  std::vector<BinomialFactor> den_;
  void add_signed(const MotiveValue& x, bool negate);
};

/// Canonical merge of a factor list (sorted by (a, b), multiplicities summed).
std::vector<BinomialFactor> canonical_factors(std::vector<BinomialFactor> f);

}  // namespace motive
