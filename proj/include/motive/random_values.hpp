#pragma once

#include "motive/motive_value.hpp"

#include <random>

namespace motive::testing {

/// Random Laurent polynomial with bounded exponents and coefficients.
inline BivariateLaurent random_laurent(std::mt19937_64& rng, int max_terms = 5, int lo = -2, int hi = 3,
                                       int coeff = 5) {
  std::uniform_int_distribution<int> nterms(0, max_terms), ex(lo, hi), cf(-coeff, coeff);
  std::vector<BivariateLaurent::Term> ts;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) ts.emplace_back(Exponent{ex(rng), ex(rng)}, Integer(cf(rng)));
  return BivariateLaurent::from_terms(std::move(ts));
}

/// Random value num / (small binomial factors).
inline MotiveValue random_value(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nf(0, 2), e(0, 2);
  std::vector<BinomialFactor> den;
  int k = nf(rng);
  for (int i = 0; i < k; ++i) {
    int a = e(rng), b = e(rng);
    if (a == 0 && b == 0) b = 1;
    den.push_back({a, b, 1});
  }
  return MotiveValue::fraction(random_laurent(rng), den);
}

}  // namespace motive::testing
