#include "motive/chains.hpp"

#include "chain_util.hpp"
#include "motive/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace motive {

using detail::cl;
using detail::fl;
using detail::frac;
using detail::L;
using detail::pr;
using detail::sym;

// ---------------------------------------------------------------------------
// Chain types

int ChainPiece::total_rank() const { return std::accumulate(rank.begin(), rank.end(), 0); }

std::int64_t ChainPiece::total_degree() const {
  return std::accumulate(deg.begin(), deg.end(), std::int64_t{0});
}

void ChainSpec::validate() const {
  if (rank.empty() || rank.size() != deg.size() || rank.size() != alpha.size())
    throw MotiveError(ErrorKind::InvalidArgument, "rank, degree and alpha vectors must have equal nonzero length");
  for (int n : rank)
    if (n < 0) throw MotiveError(ErrorKind::InvalidArgument, "negative rank");
  if (total_rank() == 0) throw MotiveError(ErrorKind::InvalidArgument, "chain of total rank 0");
}

int ChainSpec::total_rank() const { return std::accumulate(rank.begin(), rank.end(), 0); }

PerturbedRational piece_slope(const ChainPiece& p, const std::vector<PerturbedRational>& alpha) {
  PerturbedRational s;
  int n = 0;
  for (std::size_t i = 0; i < p.rank.size(); ++i) {
    s = s + pr(p.deg[i]) + Rational(p.rank[i]) * alpha[i];
    n += p.rank[i];
  }
  if (n == 0) throw MotiveError(ErrorKind::InvalidArgument, "slope of a rank 0 piece");
  return s / Rational(n);
}

PerturbedRational ChainSpec::slope() const { return piece_slope(piece(), alpha); }

std::string ChainSpec::key() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rank.size(); ++i)
    os << rank[i] << ':' << deg[i] << ':' << alpha[i].to_string() << ';';
  return os.str();
}

bool HNType::is_valid_for(const ChainSpec& ambient) const {
  std::vector<int> n(ambient.rank.size(), 0);
  std::vector<std::int64_t> d(ambient.rank.size(), 0);
  for (std::size_t j = 0; j < pieces.size(); ++j) {
    const auto& p = pieces[j];
    if (p.rank.size() != n.size() || p.deg.size() != n.size() || p.total_rank() == 0) return false;
    for (std::size_t i = 0; i < n.size(); ++i) {
      n[i] += p.rank[i];
      d[i] += p.deg[i];
    }
    if (j > 0 && !(piece_slope(pieces[j - 1], ambient.alpha) > piece_slope(p, ambient.alpha))) return false;
  }
  return n == ambient.rank && d == ambient.deg;
}

std::vector<PerturbedRational> arithmetic_alpha(int len, const PerturbedRational& sigma) {
  std::vector<PerturbedRational> a;
  for (int i = 0; i < len; ++i) a.push_back(Rational(i) * sigma);
  return a;
}

std::int64_t chi_ext(const ChainPiece& sub, const ChainPiece& quot, int g) {
  std::size_t len = std::max(sub.rank.size(), quot.rank.size());
  auto n = [&](const ChainPiece& p, std::size_t k) -> std::int64_t { return k < p.rank.size() ? p.rank[k] : 0; };
  auto d = [&](const ChainPiece& p, std::size_t k) -> std::int64_t { return k < p.deg.size() ? p.deg[k] : 0; };
  const std::int64_t gm1 = g - 1;
  std::int64_t chi = 0;
  for (std::size_t k = 0; k < len; ++k)
    chi += n(sub, k) * n(quot, k) * gm1 + n(sub, k) * d(quot, k) - n(quot, k) * d(sub, k);
  // Homomorphisms E_k -> E'_{k-1} compatible with the chain maps.
  for (std::size_t k = 1; k < len; ++k)
    chi -= n(sub, k - 1) * n(quot, k) * gm1 + n(sub, k - 1) * d(quot, k) - n(quot, k) * d(sub, k - 1);
  return chi;
}

std::int64_t hn_exponent(const std::vector<ChainPiece>& pieces, int g) {
  std::int64_t e = 0;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j) e += chi_ext(pieces[i], pieces[j], g);
  return e;
}

ChainSpec dualize(const ChainSpec& spec) {
  spec.validate();
  ChainSpec out;
  const std::size_t r = spec.rank.size() - 1;
  const PerturbedRational shift = spec.alpha.front() + spec.alpha.back();
  for (std::size_t i = 0; i <= r; ++i) {
    out.rank.push_back(spec.rank[r - i]);
    out.deg.push_back(-spec.deg[r - i]);
    out.alpha.push_back(shift - spec.alpha[r - i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stratification building blocks

namespace {

MotiveValue bun_or_one(const CurveContext& ctx, int n) {
  if (n == 0) return MotiveValue(1);
  return ctx.bun(n);
}

bool ranks_nondecreasing(const std::vector<int>& rank) {
  for (std::size_t i = 0; i + 1 < rank.size(); ++i)
    if (rank[i + 1] < rank[i]) return false;
  return true;
}

bool zero_rank_has_zero_degree(const std::vector<int>& rank, const std::vector<std::int64_t>& deg) {
  for (std::size_t i = 0; i < rank.size(); ++i)
    if (rank[i] == 0 && deg[i] != 0) return false;
  return true;
}

}  // namespace

MotiveValue gen_surj_class(const CurveContext& ctx, const std::vector<int>& rank,
                           const std::vector<std::int64_t>& deg) {
  if (rank.size() != deg.size() || rank.empty())
    throw MotiveError(ErrorKind::InvalidArgument, "rank and degree vectors differ in length");
  if (!ranks_nondecreasing(rank) || !zero_rank_has_zero_degree(rank, deg)) return {};
  const std::int64_t g = ctx.genus();
  std::int64_t chi = 0;
  MotiveValue v = bun_or_one(ctx, rank[0]);
  for (std::size_t i = 0; i + 1 < rank.size(); ++i) {
    const std::int64_t n0 = rank[i], n1 = rank[i + 1];
    if (n1 != n0) {
      chi += n1 * deg[i] - n0 * deg[i + 1] + n1 * n0 * (1 - g);
      v *= ctx.bun(static_cast<int>(n1));
    } else if (n0 > 0) {
      if (deg[i + 1] > deg[i]) return {};
      v *= ctx.sym_curve_proj(static_cast<int>(n0), static_cast<int>(deg[i] - deg[i + 1]));
    }
  }
  return v.mul_lef(chi);
}

MotiveValue gen_surj_stratum_class(const CurveContext& ctx, const std::vector<int>& rank,
                                   const std::vector<std::int64_t>& deg, const std::vector<std::int64_t>& l) {
  if (rank.size() != deg.size() || rank.empty() || l.size() + 1 != rank.size())
    throw MotiveError(ErrorKind::InvalidArgument, "gen_surj_stratum_class expects |l| = r");
  if (!ranks_nondecreasing(rank) || !zero_rank_has_zero_degree(rank, deg)) return {};
  const std::int64_t g = ctx.genus();
  std::int64_t e = 0;
  MotiveValue v = bun_or_one(ctx, rank[0]);
  for (std::size_t i = 0; i < l.size(); ++i) {
    const std::int64_t n0 = rank[i], n1 = rank[i + 1];
    if (l[i] < 0) return {};
    if (n0 == n1 && l[i] != deg[i] - deg[i + 1]) return {};
    if (n0 == 0 && l[i] != 0) return {};
    // Extension of the image by the kernel, then a length-l modification; this is 0 at equal ranks.
    e += (n1 * n0 - n0 * n0) * (g - 1) + n1 * deg[i] - n0 * deg[i + 1] - n1 * l[i];
    v *= bun_or_one(ctx, static_cast<int>(n1 - n0));
    if (n0 > 0) v *= ctx.sym_curve_proj(static_cast<int>(n0), static_cast<int>(l[i]));
  }
  return v.mul_lef(e);
}

MotiveValue saturation_stratum_class(const CurveContext& ctx, const std::vector<ChainPiece>& partition) {
  if (partition.empty()) throw MotiveError(ErrorKind::InvalidPartitionShape, "empty partition");
  const std::size_t len = partition.front().rank.size();
  if (partition.size() > len)
    throw MotiveError(ErrorKind::InvalidPartitionShape, "more pieces than chain positions");
  std::vector<ChainPiece> truncated;
  for (std::size_t i = 0; i < partition.size(); ++i) {
    const auto& p = partition[i];
    if (p.rank.size() != len || p.deg.size() != len)
      throw MotiveError(ErrorKind::InvalidPartitionShape, "pieces must have the ambient length");
    // Piece i is a chain E_{r-i} -> ... -> E_0.
    for (std::size_t k = len - i; k < len; ++k)
      if (p.rank[k] != 0 || p.deg[k] != 0)
        throw MotiveError(ErrorKind::InvalidPartitionShape,
                          "piece " + std::to_string(i) + " is nonzero at position " + std::to_string(k));
    truncated.push_back({std::vector<int>(p.rank.begin(), p.rank.end() - static_cast<long>(i)),
                         std::vector<std::int64_t>(p.deg.begin(), p.deg.end() - static_cast<long>(i))});
  }
  MotiveValue v(1);
  for (const auto& p : truncated) {
    v *= gen_surj_class(ctx, p.rank, p.deg);
    if (v.is_zero()) return {};
  }
  return v.mul_lef(hn_exponent(partition, ctx.genus()));
}

MotiveValue m_m1_open(const CurveContext& ctx, int m, std::int64_t d0, std::int64_t d1) {
  // Equal ranks: the nonzero map is an effective divisor of degree d0 - d1.
  if (m == 1) return gen_surj_class(ctx, {1, 1}, {d0, d1});
  const std::int64_t g = ctx.genus();
  return (ctx.upic() * ctx.bun(m)).mul_lef(-m * (g - 1) + d0 - m * d1);
}

MotiveValue m_m1_full(const CurveContext& ctx, int m, std::int64_t d0, std::int64_t d1) {
  return m_m1_open(ctx, m, d0, d1) + ctx.upic() * ctx.bun(m);
}

// ---------------------------------------------------------------------------
// Closed forms

MotiveValue m21_ss(const CurveContext& ctx, std::int64_t d0, const PerturbedRational& sigma) {
  const PerturbedRational d = pr(d0);
  if (d < frac(sigma, 2) || d > Rational(2) * sigma) return {};
  const std::int64_t g = ctx.genus();
  const std::int64_t top = cl(frac(Rational(2) * d - sigma, 3)) - 1;
  MotiveAccumulator acc;
  for (std::int64_t l = 0; l <= top; ++l) acc.add(sym(ctx, l) * (L(g - 1 + d0 - 2 * l) - L(l)));
  return ctx.upic().pow(2) * acc.result();
}

MotiveValue m21_min_slope(const CurveContext& ctx, std::int64_t d0, const PerturbedRational& sigma,
                          const PerturbedRational& h) {
  const PerturbedRational d = pr(d0);
  const PerturbedRational third = frac(d + sigma, 3);
  if (!(sigma > h && d > h && third > h)) return {};
  const std::int64_t g = ctx.genus();
  MotiveAccumulator acc;
  const std::int64_t top1 = cl(d - h) - 1;
  for (std::int64_t l = 0; l <= top1; ++l) acc.add(sym(ctx, l).mul_lef(g - 1 + d0 - 2 * l));
  const std::int64_t top2 = fl(Rational(2) * h - sigma);
  for (std::int64_t l = 0; l <= top2; ++l) acc.sub(sym(ctx, l).mul_lef(l));
  return ctx.upic().pow(2) * acc.result();
}

MotiveValue m31_ss(const CurveContext& ctx, std::int64_t d0, const PerturbedRational& sigma) {
  const PerturbedRational d = pr(d0);
  if (d < sigma || d > Rational(3) * sigma) return {};
  const std::int64_t g = ctx.genus();
  const MotiveValue& upic = ctx.upic();
  const MotiveValue& bun2 = ctx.bun(2);

  const std::int64_t a34 = fl(frac(Rational(3) * d - sigma, 4));   // floor((3d - s)/4)
  const std::int64_t b14 = fl(frac(d + sigma, 4));                  // floor((d + s)/4)
  const std::int64_t top_half = cl(d - frac(sigma, 2)) - 1;         // ceil(d - s/2) - 1
  const std::int64_t c2 = cl(frac(d - sigma, 2)) - 1;               // ceil((d - s)/2) - 1
  const std::int64_t f2 = fl(frac(d - sigma, 2));                   // floor((d - s)/2)
  const std::int64_t raw_top = fl(d - frac(sigma, 2));              // raw endpoint d - s/2

  MotiveValue result = (upic * ctx.bun(3)).mul_lef(d0 - 3 * (g - 1));

  // [uPic]^2 [Bun_2] ( L^{2d - 2 a34} / (L^2 - 1) + sum_l L^{-3l + 2d - (g-1)} )
  {
    MotiveValue inner = L(2 * d0 - 2 * a34).div_lef_minus_one(2);
    inner += geometric_range(-3, b14 + 1, top_half).mul_lef(2 * d0 - (g - 1));
    result -= upic.pow(2) * bun2 * inner;
  }
  // [uPic][Bun_2] ( sum_{l <= c2} L^{2l} C^l + sum_{l > f2} L^{-3l + d + 2g - 2} C^l )
  {
    MotiveAccumulator acc;
    for (std::int64_t l = 0; l <= c2; ++l) acc.add(sym(ctx, l).mul_lef(2 * l));
    acc.add(detail::sym_tail(ctx, -3, f2 + 1).mul_lef(d0 + 2 * g - 2));
    result -= upic * bun2 * acc.result();
  }
  // [uPic]^3 ( four double sums )
  {
    MotiveAccumulator acc;
    const MotiveValue tail_k = detail::sym_tail(ctx, -2, f2 + 1);
    acc.add(tail_k * detail::geo_tail(-2, a34 + 1).mul_lef(2 * d0 + 3 * g - 3));
    acc.add(tail_k * geometric_range(-3, b14 + 1, top_half).mul_lef(2 * g - 2 + 2 * d0));
    for (std::int64_t k = 0; k <= c2; ++k) {
      acc.add(sym(ctx, k).mul_lef(-2 * k) * geometric_range(-3, a34 - k + 1, raw_top).mul_lef(2 * g - 2 + 2 * d0));
      acc.add(sym(ctx, k).mul_lef(k) * detail::geo_tail(-2, b14 + 1).mul_lef(g - 1 + d0));
    }
    result += upic.pow(3) * acc.result();
  }
  return result;
}

MotiveValue m211_ss(const CurveContext& ctx, std::int64_t d0, std::int64_t d1, std::int64_t d2,
                    const PerturbedRational& sigma) {
  const PerturbedRational mu = frac(pr(d0 + d1 + d2) + Rational(3) * sigma, 4);
  const bool nonempty = d2 <= d1 && pr(d0) < Rational(2) * mu && pr(d0 + d1) < Rational(3) * mu - sigma &&
                        pr(d2 + 2 * d1) < Rational(3) * mu - Rational(3) * sigma;
  if (!nonempty) return {};
  const std::int64_t g = ctx.genus();
  const std::int64_t top = cl(pr(d0 - d1) - mu) - 1;
  MotiveAccumulator acc;
  for (std::int64_t l = 0; l <= top; ++l) acc.add(sym(ctx, l) * (L(g - 1 + d0 - 2 * d1 - 2 * l) - L(l)));
  return ctx.upic().pow(2) * sym(ctx, d1 - d2) * acc.result();
}

MotiveValue m1111_ss(const CurveContext& ctx, const std::vector<std::int64_t>& d, const PerturbedRational& sigma) {
  if (d.size() != 4) throw MotiveError(ErrorKind::InvalidArgument, "m1111_ss expects four degrees");
  const bool nonempty = d[0] >= d[1] && d[1] >= d[2] && d[2] >= d[3] &&
                        pr(d[0] + d[1] + d[2]) <= pr(3 * d[3]) + Rational(6) * sigma &&
                        pr(d[0] + d[1]) <= pr(d[2] + d[3]) + Rational(4) * sigma &&
                        pr(3 * d[0]) <= pr(d[1] + d[2] + d[3]) + Rational(6) * sigma;
  if (!nonempty) return {};
  return ctx.upic() * sym(ctx, d[0] - d[1]) * sym(ctx, d[1] - d[2]) * sym(ctx, d[2] - d[3]);
}

MotiveValue m22_ss_small(const CurveContext& ctx, std::int64_t d0, const PerturbedRational& gap) {
  if (d0 % 2 == 0) throw MotiveError(ErrorKind::OddnessViolation, "d0 = " + std::to_string(d0) + " is even");
  if (d0 <= 0 || !(pr(d0) < gap))
    throw MotiveError(ErrorKind::RegimeViolation, "need 0 < d0 < " + gap.to_string() + ", got " + std::to_string(d0));
  const std::int64_t g = ctx.genus();
  MotiveValue main = ctx.bun(2) * ctx.sym_curve_proj(2, static_cast<int>(d0));
  MotiveValue half = ctx.sym_two_curves(static_cast<int>(d0)).div_integer(2);
  MotiveValue strata = (ctx.upic().pow(2) * half * detail::geo_tail(-1, 0)).mul_lef((g - 1) + (d0 - 1) / 2);
  return main - strata;
}

namespace {

void check_m22_regime(std::int64_t d0, const PerturbedRational& sigma) {
  if (d0 % 2 == 0) throw MotiveError(ErrorKind::OddnessViolation, "d0 = " + std::to_string(d0) + " is even");
  if (!(sigma < pr(d0) && pr(d0) < Rational(2) * sigma))
    throw MotiveError(ErrorKind::RegimeViolation,
                      "need sigma < d0 < 2 sigma, got d0 = " + std::to_string(d0) + ", sigma = " + sigma.to_string());
  if (fl(sigma) % 2 != 0)
    throw MotiveError(ErrorKind::ParityViolation, "floor(sigma) = " + std::to_string(fl(sigma)) + " is odd");
}

}  // namespace

MotiveValue m22_fin(const CurveContext& ctx, std::int64_t d0, const PerturbedRational& sigma) {
  check_m22_regime(d0, sigma);
  const std::int64_t g = ctx.genus();
  const std::int64_t fs = fl(sigma);
  MotiveAccumulator acc;
  for (std::int64_t m = 0; m <= cl(pr(d0) - sigma) - 1; ++m)
    acc.add(sym(ctx, m).mul_lef(-2 * m).scaled(Integer(static_cast<long>(d0 - fs - m))));
  return ctx.bun(2) * ctx.sym_curve_proj(2, static_cast<int>(d0)) +
         (ctx.upic().pow(3) * acc.result()).mul_lef(2 * (g - 1) + d0);
}

MotiveValue m22_ss_large(const CurveContext& ctx, std::int64_t d0, const PerturbedRational& sigma) {
  check_m22_regime(d0, sigma);
  const std::int64_t g = ctx.genus();
  const PerturbedRational d = pr(d0);
  const std::int64_t fs = fl(sigma);
  const MotiveValue& upic = ctx.upic();
  const MotiveValue u2 = upic.pow(2), u3 = upic.pow(3);

  const std::int64_t k_lo = fl(sigma - frac(d, 2)) + 1;      // floor(s - d/2) + 1
  const std::int64_t k_hi = cl(d - frac(sigma, 2)) - 1;      // ceil(d - s/2) - 1
  const std::int64_t top_ds = cl(d - sigma) - 1;             // ceil(d - s) - 1

  MotiveValue result = m22_fin(ctx, d0, sigma);
  // - L^{2d - 3(g-1)} [uPic]^2 [Bun_2] sum_k L^{-k}
  result -= (u2 * ctx.bun(2) * geometric_range(-1, k_lo, k_hi)).mul_lef(2 * d0 - 3 * (g - 1));
  // - L^{d + g - 1} [uPic]^2 sum_{k > d/2} L^{-k} sum_l C^(d - fs + 2l) C^(fs - 2l)
  {
    MotiveAccumulator acc;
    for (std::int64_t l = 0; l <= cl(sigma - frac(d, 2)) - 1; ++l)
      acc.add(sym(ctx, d0 - fs + 2 * l) * sym(ctx, fs - 2 * l));
    result -= (u2 * detail::geo_tail(-1, fl(frac(d, 2)) + 1) * acc.result()).mul_lef(d0 + g - 1);
  }
  // - L^{2d} [uPic]^3 sum_{k > d - s/2} L^{-k} sum_{l <= top_ds} L^{-2l} C^l
  {
    MotiveAccumulator acc;
    for (std::int64_t l = 0; l <= top_ds; ++l) acc.add(sym(ctx, l).mul_lef(-2 * l));
    result -= (u3 * detail::geo_tail(-1, fl(d - frac(sigma, 2)) + 1) * acc.result()).mul_lef(2 * d0);
  }
  // + L^{2d} [uPic]^3 sum_{k_lo..k_hi} L^{-k} sum_{l > d - s} L^{-2l} C^l
  result += (u3 * geometric_range(-1, k_lo, k_hi) * detail::sym_tail(ctx, -2, fl(d - sigma) + 1)).mul_lef(2 * d0);
  // + L^{d + g - 1} [uPic]^3 ( ... )
  {
    MotiveAccumulator acc;
    const std::int64_t k_mid = cl(Rational(3, 2) * d - sigma) - 1;
    for (std::int64_t k = k_lo; k <= k_mid; ++k) {
      const std::int64_t l_lo = fl(Rational(3, 4) * d - frac(sigma, 2) - frac(pr(k), 2)) + 1;
      for (std::int64_t l = std::max<std::int64_t>(l_lo, 0); l <= top_ds; ++l) acc.add(sym(ctx, l).mul_lef(-l - k));
    }
    MotiveAccumulator inner;
    for (std::int64_t l = 0; l <= top_ds; ++l) inner.add(sym(ctx, l).mul_lef(-l));
    acc.add(detail::geo_tail(-1, fl(Rational(3, 2) * d - sigma) + 1) * inner.result());
    result += (u3 * acc.result()).mul_lef(d0 + g - 1);
  }
  // + L^{d - (g-1)} [uPic]^3 ( ... )
  {
    MotiveAccumulator acc;
    auto block = [&](std::int64_t l_lo, std::int64_t l_hi, bool negate) {
      for (std::int64_t l = std::max<std::int64_t>(l_lo, 0); l <= l_hi; ++l) {
        if (negate) acc.sub(sym(ctx, l).mul_lef(l)); else acc.add(sym(ctx, l).mul_lef(l));
      }
    };
    for (std::int64_t k = k_lo; k <= k_hi; ++k)
      block(0, cl(frac(pr(2 * d0 - 2 * k) - sigma, 3)) - 1, false);
    for (std::int64_t k = fl(frac(sigma, 2) - frac(d, 4)) + 1; k <= cl(frac(sigma, 4)) - 1; ++k)
      block(fl(sigma - pr(4 * k)) + 1, cl(frac(pr(2 * d0 - 4 * k) - sigma, 3)) - 1, true);
    for (std::int64_t k = fl(frac(sigma, 4)) + 1; k <= cl(frac(d, 2) - frac(sigma, 4)) - 1; ++k)
      block(0, cl(frac(pr(2 * d0 - 4 * k) - sigma, 3)) - 1, true);
    result += (u3 * acc.result()).mul_lef(d0 - (g - 1));
  }
  return result;
}

MotiveValue m121_fin(const CurveContext& ctx, std::int64_t d0, std::int64_t d1, const PerturbedRational& sigma) {
  const std::int64_t g = ctx.genus();
  MotiveAccumulator acc;
  const std::int64_t top1 = std::min<std::int64_t>(d0, cl(frac(pr(3 * d1 - d0), 4)) - 1);
  for (std::int64_t l = 0; l <= top1; ++l) acc.add((sym(ctx, l) * sym(ctx, d0 - l)).mul_lef(d0 - l));
  const std::int64_t top2 = cl(frac(pr(d0 + d1), 2) - sigma) - 1;
  for (std::int64_t l = 0; l <= top2; ++l)
    acc.add((sym(ctx, l) * sym(ctx, d0 - d1 + l)).mul_lef((g - 1) + d1 - 2 * l));
  return ctx.upic().pow(2) * acc.result();
}

MotiveValue m121_ss(const CurveContext& ctx, std::int64_t d0, std::int64_t d1, const PerturbedRational& sigma) {
  const bool nonempty = pr(d0 + d1) <= Rational(4) * sigma && pr(3 * d0 - d1) <= Rational(4) * sigma &&
                        0 <= d0 && d0 <= 3 * d1 && 3 * d1 <= 5 * d0;
  if (!nonempty) return {};
  const std::int64_t g = ctx.genus();
  MotiveAccumulator a, b;
  for (std::int64_t l = fl(frac(pr(d1 - d0), 2) + sigma) + 1; l <= std::min(d0, d1); ++l)
    a.add(sym(ctx, d0 - l) * sym(ctx, d1 - l));
  for (std::int64_t l = 0; l <= cl(frac(pr(3 * d1 - d0), 4)) - 1; ++l)
    b.add((sym(ctx, l) * sym(ctx, d0 - l)).mul_lef(l));
  const MotiveValue u2 = ctx.upic().pow(2);
  return m121_fin(ctx, d0, d1, sigma) - (u2 * a.result()).mul_lef(d0 - (g - 1)) - u2 * b.result();
}

}  // namespace motive
