#pragma once

#include "motive/motive_value.hpp"

#include <vector>

namespace motive {

/// Power series in t with MotiveValue coefficients, truncated after t^order.
struct TruncatedSeries {
  int order = 0;
  std::vector<MotiveValue> coeffs;  ///< size order + 1

  explicit TruncatedSeries(int ord = 0) : order(ord), coeffs(static_cast<std::size_t>(ord) + 1) {}
  /// Series from explicit coefficients; missing ones are zero, extra ones dropped.
  static TruncatedSeries from(int ord, const std::vector<MotiveValue>& c);
  const MotiveValue& operator[](int i) const { return coeffs[static_cast<std::size_t>(i)]; }
  MotiveValue& operator[](int i) { return coeffs[static_cast<std::size_t>(i)]; }
};

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);

/// Inverse series; throws ZeroConstantTerm if the constant coefficient vanishes.
TruncatedSeries series_invert(const TruncatedSeries& s);

/// 1 - c * t^k truncated at the given order.
TruncatedSeries one_minus(const MotiveValue& c, int k, int order);

}  // namespace motive
