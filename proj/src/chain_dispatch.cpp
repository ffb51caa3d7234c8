#include "motive/chains.hpp"
#include "motive/errors.hpp"

#include "chain_util.hpp"

#include <algorithm>
#include <initializer_list>
#include <string>

namespace motive {

using detail::pr;

MotiveValue m22_ss(const CurveContext& ctx, std::int64_t e, const PerturbedRational& sigma) {
  if (e <= 0 || !(pr(e) < Rational(2) * sigma)) return {};
  if (pr(e) < sigma) return m22_ss_small(ctx, e, sigma);
  return m22_ss_large(ctx, e, sigma);
}

namespace {

bool shape_is(const std::vector<int>& rank, std::initializer_list<int> shape) {
  return rank.size() == shape.size() && std::equal(rank.begin(), rank.end(), shape.begin());
}

/// Twists by a line bundle so that the last degree vanishes; false if n_r does not divide d_r.
bool twist_last_to_zero(const std::vector<int>& rank, std::vector<std::int64_t>& deg) {
  const std::int64_t nr = rank.back(), dr = deg.back();
  if (dr % nr != 0) return false;
  const std::int64_t t = -dr / nr;
  for (std::size_t i = 0; i < rank.size(); ++i) deg[i] += rank[i] * t;
  return true;
}

}  // namespace

MotiveValue chain_ss(const CurveContext& ctx, const std::vector<int>& rank_in, const std::vector<std::int64_t>& deg_in,
                     const PerturbedRational& sigma) {
  if (rank_in.empty() || rank_in.size() != deg_in.size())
    throw MotiveError(ErrorKind::InvalidArgument, "rank and degree vectors must have equal nonzero length");
  // Zero ranks at either end carry no bundle; dropping leading ones shifts alpha uniformly.
  std::size_t lo = 0, hi = rank_in.size();
  while (lo < hi && rank_in[lo] == 0) ++lo;
  while (hi > lo && rank_in[hi - 1] == 0) --hi;
  if (lo == hi) throw MotiveError(ErrorKind::InvalidArgument, "chain of total rank 0");
  for (std::size_t i = 0; i < rank_in.size(); ++i) {
    if (rank_in[i] < 0) throw MotiveError(ErrorKind::InvalidArgument, "negative rank");
    if ((i < lo || i >= hi) && deg_in[i] != 0) return {};
    if (i >= lo && i < hi && rank_in[i] == 0)
      throw MotiveError(ErrorKind::UnsupportedRank, "zero rank inside the chain");
  }
  const std::vector<int> rank(rank_in.begin() + static_cast<long>(lo), rank_in.begin() + static_cast<long>(hi));
  std::vector<std::int64_t> deg(deg_in.begin() + static_cast<long>(lo), deg_in.begin() + static_cast<long>(hi));

  if (rank.size() == 1) return ctx.bun_ss(rank[0], deg[0]);
  // Only the degree difference matters for rank (2,2).
  if (shape_is(rank, {2, 2})) return m22_ss(ctx, deg[0] - deg[1], sigma);

  const auto alpha = arithmetic_alpha(static_cast<int>(rank.size()), sigma);
  const bool reversed = shape_is(rank, {1, 2}) || shape_is(rank, {1, 3}) || shape_is(rank, {1, 1, 2});
  if (reversed) {
    const ChainSpec dual = dualize({rank, deg, alpha});
    return chain_ss(ctx, dual.rank, dual.deg, sigma);
  }
  std::vector<std::int64_t> d = deg;
  if (twist_last_to_zero(rank, d)) {
    if (shape_is(rank, {2, 1})) return m21_ss(ctx, d[0], sigma);
    if (shape_is(rank, {3, 1})) return m31_ss(ctx, d[0], sigma);
    if (shape_is(rank, {2, 1, 1})) return m211_ss(ctx, d[0], d[1], 0, sigma);
    if (shape_is(rank, {1, 2, 1})) return m121_ss(ctx, d[0], d[1], sigma);
    if (shape_is(rank, {1, 1, 1, 1})) return m1111_ss(ctx, d, sigma);
  }
  HNEngine engine(ctx);
  return engine.generic_ss({rank, deg, alpha});
}

}  // namespace motive
