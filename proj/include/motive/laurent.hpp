#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace motive {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exponent pair (e_u, e_v) of a monomial u^e_u v^e_v.
struct Exponent {
  std::int64_t u = 0;
  std::int64_t v = 0;
  auto operator<=>(const Exponent&) const = default;
};

/// Sparse exact Laurent polynomial in u, v with big-integer coefficients.
/// Terms are kept sorted by (e_u, e_v) and no stored coefficient is zero.
class BivariateLaurent {
 public:
  using Term = std::pair<Exponent, Integer>;

  BivariateLaurent() = default;
  BivariateLaurent(long c);  // NOLINT: constants convert implicitly
  BivariateLaurent(const Integer& c);  // NOLINT

  static BivariateLaurent monomial(const Integer& c, std::int64_t eu, std::int64_t ev);
  /// (uv)^k.
  static BivariateLaurent lef_power(std::int64_t k);
  /// Builds from unsorted terms; duplicates are merged and zeros dropped.
  static BivariateLaurent from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Coefficient of u^eu v^ev (zero if absent).
  Integer coeff(std::int64_t eu, std::int64_t ev) const;

  BivariateLaurent& operator+=(const BivariateLaurent& o);
  BivariateLaurent& operator-=(const BivariateLaurent& o);
  BivariateLaurent& operator*=(const BivariateLaurent& o);
  BivariateLaurent operator-() const;
  friend BivariateLaurent operator+(BivariateLaurent a, const BivariateLaurent& b) { return a += b; }
  friend BivariateLaurent operator-(BivariateLaurent a, const BivariateLaurent& b) { return a -= b; }
  friend BivariateLaurent operator*(const BivariateLaurent& a, const BivariateLaurent& b);
  bool operator==(const BivariateLaurent& o) const;

  BivariateLaurent scaled(const Integer& c) const;
  /// Multiplies by u^du v^dv.
  BivariateLaurent shifted(std::int64_t du, std::int64_t dv) const;
  BivariateLaurent swap_uv() const;
  BivariateLaurent pow(unsigned k) const;
  /// Adds c * u^du v^dv * o into this without materializing the product.
  void add_scaled_shift(const BivariateLaurent& o, const Integer& c, std::int64_t du, std::int64_t dv);

  /// Exact division by the integer c; returns nullopt if some coefficient is not divisible.
  std::optional<BivariateLaurent> try_div_integer(const Integer& c) const;
  /// Returns q with q * (1 - u^a v^b) == *this, or nullopt (NotDivisible).
  std::optional<BivariateLaurent> try_div_binomial(std::int64_t a, std::int64_t b) const;
  /// Multiplies by (1 - u^a v^b).
  BivariateLaurent mul_binomial(std::int64_t a, std::int64_t b) const;

  Rational eval(const Rational& u0, const Rational& v0) const;
  /// Content gcd of all coefficients (0 for the zero polynomial).
  Integer content() const;

  bool is_polynomial() const;  ///< no negative exponents
  std::int64_t min_u() const;
  std::int64_t max_u() const;
  std::int64_t min_v() const;
  std::int64_t max_v() const;
  /// Largest e_u + e_v over the support; requires nonzero.
  std::int64_t max_total_degree() const;
  std::int64_t min_total_degree() const;
  /// Part of the polynomial of total degree max_total_degree().
  BivariateLaurent top_part() const;

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
  friend BivariateLaurent multiply_schoolbook(const BivariateLaurent&, const BivariateLaurent&);
  friend BivariateLaurent multiply_kronecker(const BivariateLaurent&, const BivariateLaurent&);
};

/// Product via sparse schoolbook accumulation.
BivariateLaurent multiply_schoolbook(const BivariateLaurent& a, const BivariateLaurent& b);
/// Product via Kronecker packing into one big integer multiplication.
BivariateLaurent multiply_kronecker(const BivariateLaurent& a, const BivariateLaurent& b);

}  // namespace motive
