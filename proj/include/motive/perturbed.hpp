#pragma once

#include "motive/laurent.hpp"

#include <compare>
#include <cstdint>
#include <string>

namespace motive {

/// q + eps * ε for an infinitesimal ε > 0. Ordering is lexicographic in (q, eps).
/// eps is kept rational so that σ/2, σ/4, ... stay exact.
struct PerturbedRational {
  Rational q = 0;
  Rational eps = 0;

  PerturbedRational() = default;
  PerturbedRational(long x) : q(x) {}  // NOLINT
  PerturbedRational(Rational x, Rational e = 0) : q(std::move(x)), eps(std::move(e)) {}  // NOLINT

  friend PerturbedRational operator+(const PerturbedRational& a, const PerturbedRational& b) {
    return {a.q + b.q, a.eps + b.eps};
  }
  friend PerturbedRational operator-(const PerturbedRational& a, const PerturbedRational& b) {
    return {a.q - b.q, a.eps - b.eps};
  }
  PerturbedRational operator-() const { return {-q, -eps}; }
  friend PerturbedRational operator*(const Rational& c, const PerturbedRational& a) { return {c * a.q, c * a.eps}; }
  friend PerturbedRational operator*(const PerturbedRational& a, const Rational& c) { return {c * a.q, c * a.eps}; }
  friend PerturbedRational operator/(const PerturbedRational& a, const Rational& c) { return {a.q / c, a.eps / c}; }

  friend bool operator==(const PerturbedRational& a, const PerturbedRational& b) {
    return a.q == b.q && a.eps == b.eps;
  }
  friend std::strong_ordering operator<=>(const PerturbedRational& a, const PerturbedRational& b) {
    int c = cmp(a.q, b.q);
    if (c == 0) c = cmp(a.eps, b.eps);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  bool is_integer() const { return eps == 0 && q.get_den() == 1; }

  /// Largest integer <= q + eps ε.
  std::int64_t floor() const {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    if (q.get_den() == 1 && eps < 0) f -= 1;
    return f.get_si();
  }
  /// Smallest integer >= q + eps ε.
  std::int64_t ceil() const {
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    if (q.get_den() == 1 && eps > 0) c += 1;
    return c.get_si();
  }

  std::string to_string() const {
    std::string s = q.get_str();
    if (eps != 0) s += (eps > 0 ? "+" : "-") + Rational(abs(eps)).get_str() + "e";
    return s;
  }
};

/// The Higgs stability parameter (2g - 2 + offset) + ε.
inline PerturbedRational higgs_sigma(int g, long offset = 0) {
  return PerturbedRational(Rational(2 * g - 2 + offset), Rational(1));
}

}  // namespace motive
