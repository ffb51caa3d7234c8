#include "motive/series.hpp"

#include "motive/errors.hpp"

#include <algorithm>

namespace motive {

TruncatedSeries TruncatedSeries::from(int ord, const std::vector<MotiveValue>& c) {
  TruncatedSeries s(ord);
  for (int i = 0; i <= ord && i < static_cast<int>(c.size()); ++i) s[i] = c[static_cast<std::size_t>(i)];
  return s;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  int ord = std::min(a.order, b.order);
  TruncatedSeries r(ord);
  for (int n = 0; n <= ord; ++n) {
    MotiveAccumulator acc;
    for (int i = 0; i <= n; ++i) {
      if (a[i].is_zero() || b[n - i].is_zero()) continue;
      acc.add(a[i] * b[n - i]);
    }
    r[n] = acc.result();
  }
  return r;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  int ord = std::min(a.order, b.order);
  TruncatedSeries r(ord);
  for (int n = 0; n <= ord; ++n) r[n] = a[n] + b[n];
  return r;
}

TruncatedSeries series_invert(const TruncatedSeries& s) {
  if (s[0].is_zero()) throw MotiveError(ErrorKind::ZeroConstantTerm, "constant coefficient is zero");
  TruncatedSeries r(s.order);
  MotiveValue inv0 = s[0].inverse();
  r[0] = inv0;
  for (int n = 1; n <= s.order; ++n) {
    MotiveAccumulator acc;
    for (int i = 1; i <= n; ++i) {
      if (s[i].is_zero() || r[n - i].is_zero()) continue;
      acc.add(s[i] * r[n - i]);
    }
    r[n] = -(acc.result() * inv0);
  }
  return r;
}

TruncatedSeries one_minus(const MotiveValue& c, int k, int order) {
  TruncatedSeries s(order);
  s[0] = 1;
  if (k == 0) {
    s[0] = MotiveValue(1) - c;
  } else if (k <= order) {
    s[k] = -c;
  }
  return s;
}

}  // namespace motive
