#pragma once

#include "motive/curve.hpp"
#include "motive/memo.hpp"
#include "motive/motive_value.hpp"
#include "motive/perturbed.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace motive {

/// Rank and degree vectors of a chain E_r -> ... -> E_0 (index i is E_i).
struct ChainPiece {
  std::vector<int> rank;
  std::vector<std::int64_t> deg;

  int total_rank() const;
  std::int64_t total_degree() const;
  bool operator==(const ChainPiece&) const = default;
};

/// A chain type together with its stability parameter.
struct ChainSpec {
  std::vector<int> rank;
  std::vector<std::int64_t> deg;
  std::vector<PerturbedRational> alpha;

  /// Throws InvalidArgument unless the lengths agree and some rank is positive.
  void validate() const;
  int total_rank() const;
  /// (sum d_i + sum n_i alpha_i) / sum n_i.
  PerturbedRational slope() const;
  ChainPiece piece() const { return {rank, deg}; }
  std::string key() const;
};

/// alpha-slope of a piece measured with the ambient parameter.
PerturbedRational piece_slope(const ChainPiece& p, const std::vector<PerturbedRational>& alpha);

/// Ordered subquotients of a Harder-Narasimhan flag.
struct HNType {
  std::vector<ChainPiece> pieces;

  /// Ranks and degrees sum to the ambient ones and slopes strictly decrease.
  bool is_valid_for(const ChainSpec& ambient) const;
};

/// (0, s, 2s, ..., (len-1)s).
std::vector<PerturbedRational> arithmetic_alpha(int len, const PerturbedRational& sigma);

/// Relative dimension chi_ij of the extension stack of the quotient piece j by the sub piece i.
std::int64_t chi_ext(const ChainPiece& sub, const ChainPiece& quot, int g);
/// Sum over i < j of chi_ext(piece_i, piece_j).
std::int64_t hn_exponent(const std::vector<ChainPiece>& pieces, int g);

/// Dual chain: ranks reversed, degrees negated and reversed, alpha'_i = (alpha_0 + alpha_r) - alpha_{r-i}.
ChainSpec dualize(const ChainSpec& spec);

/// Stack of chains whose maps are all generically surjective; 0 when empty.
MotiveValue gen_surj_class(const CurveContext& ctx, const std::vector<int>& rank,
                           const std::vector<std::int64_t>& deg);
/// Stratum of gen_surj_class with torsion lengths l_i; 0 when empty.
MotiveValue gen_surj_stratum_class(const CurveContext& ctx, const std::vector<int>& rank,
                                   const std::vector<std::int64_t>& deg, const std::vector<std::int64_t>& l);
/// Stratum of the saturation filtration with subquotients partition[0..r]; piece i lives on positions 0..r-i.
MotiveValue saturation_stratum_class(const CurveContext& ctx, const std::vector<ChainPiece>& partition);

/// Chains of rank (m,1) with nonzero map. For m = 1 this is [uPic][C^(d0-d1)].
MotiveValue m_m1_open(const CurveContext& ctx, int m, std::int64_t d0, std::int64_t d1);
/// All chains of rank (m,1).
MotiveValue m_m1_full(const CurveContext& ctx, int m, std::int64_t d0, std::int64_t d1);

/// Semistable chains of rank (2,1), degree (d0,0), alpha = (0, sigma).
MotiveValue m21_ss(const CurveContext& ctx, std::int64_t d0, const PerturbedRational& sigma);
/// Chains of rank (2,1), degree (d0,0), nonzero map and minimal HN slope > h.
MotiveValue m21_min_slope(const CurveContext& ctx, std::int64_t d0, const PerturbedRational& sigma,
                          const PerturbedRational& h);
/// Semistable chains of rank (3,1), degree (d0,0), alpha = (0, sigma).
MotiveValue m31_ss(const CurveContext& ctx, std::int64_t d0, const PerturbedRational& sigma);
/// Semistable chains of rank (2,1,1), alpha = (0, sigma, 2 sigma).
MotiveValue m211_ss(const CurveContext& ctx, std::int64_t d0, std::int64_t d1, std::int64_t d2,
                    const PerturbedRational& sigma);
/// Semistable chains of rank (1,1,1,1), alpha = (0, sigma, 2 sigma, 3 sigma).
MotiveValue m1111_ss(const CurveContext& ctx, const std::vector<std::int64_t>& d, const PerturbedRational& sigma);
/// Semistable chains of rank (2,2), degree (d0,0) with 0 < d0 < gap = alpha_1 - alpha_0, d0 odd.
MotiveValue m22_ss_small(const CurveContext& ctx, std::int64_t d0, const PerturbedRational& gap);
/// The open substack M(2,2)^fin for sigma < d0 < 2 sigma.
MotiveValue m22_fin(const CurveContext& ctx, std::int64_t d0, const PerturbedRational& sigma);
/// Semistable chains of rank (2,2), degree (d0,0) with sigma < d0 < 2 sigma.
MotiveValue m22_ss_large(const CurveContext& ctx, std::int64_t d0, const PerturbedRational& sigma);
/// The open substack M(1,2,1)^fin of degree (d0, d1, 0).
MotiveValue m121_fin(const CurveContext& ctx, std::int64_t d0, std::int64_t d1, const PerturbedRational& sigma);
/// Semistable chains of rank (1,2,1), degree (d0, d1, 0), alpha = (0, sigma, 2 sigma).
MotiveValue m121_ss(const CurveContext& ctx, std::int64_t d0, std::int64_t d1, const PerturbedRational& sigma);

/// Semistable chains of rank (2,2) and degree difference e = d0 - d1: the small regime for
/// 0 < e < sigma, the large one for sigma < e < 2 sigma, and 0 outside (0, 2 sigma).
MotiveValue m22_ss(const CurveContext& ctx, std::int64_t e, const PerturbedRational& sigma);

/// Semistable chains of any rank with alpha = (0, sigma, 2 sigma, ...), through the closed
/// forms where one applies (after dualizing and twisting) and the HN engine otherwise.
MotiveValue chain_ss(const CurveContext& ctx, const std::vector<int>& rank, const std::vector<std::int64_t>& deg,
                     const PerturbedRational& sigma);

/// m31_ss rebuilt from the four Harder-Narasimhan stratum families of M(3,1) with open map.
MotiveValue m31_ss_strata(const CurveContext& ctx, std::int64_t d0, const PerturbedRational& sigma);
/// m22_ss_large rebuilt as M^fin minus the individual stratum families meeting it.
MotiveValue m22_ss_strata(const CurveContext& ctx, std::int64_t d0, const PerturbedRational& sigma);
/// Stack of rank 2 bundles of degree e all of whose HN slopes exceed h.
MotiveValue bun2_min_slope(const CurveContext& ctx, std::int64_t e, const PerturbedRational& h);

/// Sum over l >= K with l = residue mod modulus of [C^(l)] L^{-N l}, N >= 2.
MotiveValue sym_curve_tail_congruent(const CurveContext& ctx, int N, std::int64_t K, int modulus, int residue);

/// Sum over k >= K of F(k) when, on each residue class K + rho + period j, F is a combination
/// of L^{r j} for r in rates (all negative, per step of period). The fit is checked on extra
/// samples and throws InvariantViolation when F does not have this shape.
MotiveValue sum_quasi_geometric(const std::function<MotiveValue(std::int64_t)>& F, std::int64_t K,
                                const std::vector<std::int64_t>& rates, int period);
/// sum_quasi_geometric with rate sets {-1..-R} for growing R and a growing directly summed
/// prefix; throws InvariantViolation once every attempt fails.
MotiveValue sum_quasi_geometric_auto(const std::function<MotiveValue(std::int64_t)>& F, std::int64_t K,
                                     int period);

/// Harder-Narasimhan recursion for ranks (1), (m), (1,...,1), (m,1,...,1) and (1,...,1,m).
class HNEngine {
 public:
  explicit HNEngine(const CurveContext& ctx) : ctx_(ctx) {}

  const CurveContext& curve() const { return ctx_; }
  /// Class of the semistable locus; UnsupportedRank or UnboundedEnumeration when out of reach.
  MotiveValue generic_ss(const ChainSpec& spec) const;
  /// Class of the full stack, summed over zero-map splittings.
  MotiveValue total_class(const ChainSpec& spec) const;
  /// The enumerated HN types with h >= 2 (finite part only; for inspection and tests).
  std::vector<HNType> hn_types(const ChainSpec& spec) const;

 private:
  struct Normalized;
  Normalized normalize(const ChainSpec& spec) const;
  MotiveValue compute(const Normalized& n) const;
  MotiveValue piece_ss(const ChainPiece& p, const std::vector<PerturbedRational>& alpha) const;

  const CurveContext& ctx_;
  mutable MemoTable<std::string, MotiveValue> memo_;
};

}  // namespace motive
