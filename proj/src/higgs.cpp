#include "motive/higgs.hpp"
#include "motive/errors.hpp"

#include "chain_util.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace motive {

using detail::L;
using detail::pr;
using detail::sym;

int higgs_rank(HiggsSpace s) {
  switch (s) {
    case HiggsSpace::M2: return 2;
    case HiggsSpace::M3: return 3;
    case HiggsSpace::M4: return 4;
  }
  return 0;
}

std::string higgs_space_name(HiggsSpace s) { return "higgs" + std::to_string(higgs_rank(s)); }

std::int64_t higgs_dimension(int n, int g) { return 2 * static_cast<std::int64_t>(n) * n * (g - 1) + 2; }

namespace {

/// P(1), P'(1) and P(-1) from the coefficients of P(t).
struct PValues {
  MotiveValue at_one, derivative_at_one, at_minus_one;
};

PValues p_values(const CurveContext& ctx) {
  BivariateLaurent one, der, minus;
  for (int i = 0; i <= 2 * ctx.genus(); ++i) {
    const auto& c = ctx.p_coeff(i);
    one += c;
    der += c.scaled(Integer(i));
    if (i % 2) minus -= c; else minus += c;
  }
  return {MotiveValue(one), MotiveValue(der), MotiveValue(minus)};
}

MotiveValue lef_minus_one() { return L(1) - MotiveValue(1); }

/// Divides by (L^n - 1)^k.
MotiveValue over_lef_minus_one(MotiveValue x, std::int64_t n, int k = 1) {
  for (int i = 0; i < k; ++i) x = x.div_lef_minus_one(n);
  return x;
}

std::string exponent_label(int n, int shift) {
  std::ostringstream os;
  os << "L^(" << n * n << "(g-1)";
  if (shift > 0) os << "+" << shift;
  if (shift < 0) os << shift;
  os << ")";
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Reports

PrefactorChoice select_prefactor(const MotiveValue& core, int n, int g, const std::vector<int>& shifts,
                                  int nominal_shift) {
  if (core.is_zero()) throw MotiveError(ErrorKind::PrefactorUnresolvable, "the strata sum is zero");
  const std::int64_t target = 2 * higgs_dimension(n, g);
  const std::int64_t base = static_cast<std::int64_t>(n) * n * (g - 1);
  std::vector<int> hits;
  std::ostringstream tried;
  for (int s : shifts) {
    const std::int64_t top = core.top_total_degree() + 2 * (base + s);
    tried << " " << exponent_label(n, s) << " gives top degree " << top << ";";
    if (top == target) hits.push_back(s);
  }
  if (hits.size() != 1)
    throw MotiveError(ErrorKind::PrefactorUnresolvable,
                      "rank " + std::to_string(n) + ", g = " + std::to_string(g) + ": expected top degree " +
                          std::to_string(target) + ";" + tried.str());
  const int s = hits.front();
  std::string note = "prefactor " + exponent_label(n, s) + " selected by top degree " + std::to_string(target);
  if (s != nominal_shift) note += " (nominal " + exponent_label(n, nominal_shift) + " rejected)";
  return {core.mul_lef(base + s), exponent_label(n, s), note};
}


HiggsReport make_higgs_report(int n, int g, const MotiveValue& value, std::string convention, std::string provenance) {
  HiggsReport r;
  r.rank = n;
  r.genus = g;
  r.dim = higgs_dimension(n, g);
  r.prefactor_convention = std::move(convention);
  r.provenance = std::move(provenance);
  const std::string where = "rank " + std::to_string(n) + ", g = " + std::to_string(g) + ": ";
  r.e_poly = value.to_polynomial();
  if (!r.e_poly.is_polynomial())
    throw MotiveError(ErrorKind::InvariantViolation, where + "negative exponents in the E-polynomial");
  if (r.e_poly.is_zero() || r.e_poly.max_total_degree() != 2 * r.dim || r.e_poly.coeff(r.dim, r.dim) != 1)
    throw MotiveError(ErrorKind::InvariantViolation, where + "top monomial is not (uv)^" + std::to_string(r.dim));
  if (r.e_poly.top_part().size() != 1)
    throw MotiveError(ErrorKind::InvariantViolation, where + "extra monomials in the top total degree");
  if (!(r.e_poly.swap_uv() == r.e_poly))
    throw MotiveError(ErrorKind::InvariantViolation, where + "E-polynomial is not symmetric in u, v");
  if (r.e_poly.eval(Rational(1), Rational(1)) != 0)
    throw MotiveError(ErrorKind::InvariantViolation, where + "E(1,1) is not 0");
  r.betti = e_to_poincare(r.e_poly, r.dim);
  for (std::size_t k = 0; k < r.betti.size(); ++k)
    if (r.betti[k] < 0)
      throw MotiveError(ErrorKind::InvariantViolation, where + "negative Betti number b_" + std::to_string(k));
  if (r.betti.front() != 1) throw MotiveError(ErrorKind::InvariantViolation, where + "b_0 is not 1");
  r.hodge = e_to_hodge(r.e_poly, r.dim);
  return r;
}

// ---------------------------------------------------------------------------
// Rank 2

MotiveValue m2_closed_form(const CurveContext& ctx) {
  const int g = ctx.genus();
  const PValues p = p_values(ctx);
  MotiveValue inner = (ctx.p_at_power(1) - p.at_one.mul_lef(g)).div_lef_minus_one(1).div_lef_minus_one(2);
  MotiveAccumulator odd;
  for (int k = 1; k <= g - 1; ++k) odd.add(ctx.sym_curve(2 * k - 1));
  inner += odd.result();
  return (p.at_one * inner).mul_lef(4 * (g - 1) + 1);
}

MotiveValue m2_zeta_form(const CurveContext& ctx) {
  const int g = ctx.genus();
  const PValues p = p_values(ctx);
  const MotiveValue lm1 = lef_minus_one();
  // f(t) = P(1) t^{2g-1} / ((1 - t^2)(L - 1)) + Z(C,t)/2 has a removable pole at t = 1;
  // writing f = N/D, the value there is N'(1)/D'(1) with D'(1) = 4 (L - 1)^2.
  const MotiveValue n_prime = p.at_one.scaled(Integer(2)) * (MotiveValue(2 * g - 1) * (MotiveValue(1) - L(1)) - L(1)) +
                              p.derivative_at_one.scaled(Integer(2)) * lm1 + p.at_one * lm1;
  // Z(C,-1)/2 = P(-1) / (4 (1 + L)).
  const MotiveValue z_minus = (p.at_minus_one * (MotiveValue(1) - L(1))).div_binomial(2, 2);
  const MotiveValue quarter = (over_lef_minus_one(n_prime, 1, 2) - z_minus).div_integer(Integer(4));
  const MotiveValue inner = ctx.p_at_power(1).div_lef_minus_one(1).div_lef_minus_one(2) + quarter;
  return (p.at_one * inner).mul_lef(4 * (g - 1) + 1);
}

HiggsReport m2_class(const CurveContext& ctx) {
  const int g = ctx.genus();
  const MotiveValue a = m2_closed_form(ctx);
  const MotiveValue b = m2_zeta_form(ctx);
  if (!(a == b))
    throw MotiveError(ErrorKind::FormMismatch, "rank 2, g = " + std::to_string(g) + ": the two closed forms differ");
  // Calibration: the nominal rank 2 prefactor must be the fixed-point one.
  const auto choice = select_prefactor(a.mul_lef(-(4 * (g - 1) + 1)), 2, g, {1, 0}, 1);
  return make_higgs_report(2, g, choice.value, choice.label,
                           "rank 2 closed form, equal to the zeta-function form; " + choice.note);
}

// ---------------------------------------------------------------------------
// Rank 3

namespace {

/// P(1) times the bracket of the rank 3 closed form (no L-prefactor).
MotiveValue m3_core(const CurveContext& ctx) {
  const int g = ctx.genus();
  const PValues p = p_values(ctx);
  const MotiveValue& P1 = p.at_one;
  const MotiveValue& PL = ctx.p_at_power(1);
  const MotiveValue& PL2 = ctx.p_at_power(2);
  MotiveAccumulator acc;
  acc.add(over_lef_minus_one(over_lef_minus_one((PL * PL2).div_lef_minus_one(1), 2, 2), 3));
  acc.sub(over_lef_minus_one((L(2) + L(1)) * P1 * PL, 1, 2).div_lef_minus_one(2).div_lef_minus_one(3).mul_lef(
      2 * (g - 1)));
  acc.add(over_lef_minus_one(over_lef_minus_one(P1 * P1, 1, 2), 2, 2).mul_lef(3 * (g - 1) + 2));
  {
    MotiveAccumulator s;
    for (int k = 0; k <= 3 * (g - 1); ++k)
      for (int l = 0; l <= (2 * k) / 3; ++l) s.add(sym(ctx, l) * (L(2 * (g - 1) + k - 2 * l) - L(l)));
    for (int k = 0; k <= g - 1; ++k)
      for (int l = 0; l <= 2 * k; ++l) s.sub(sym(ctx, l) * (L(2 * (g - 1) + 3 * k - 2 * l) - L(l)));
    acc.add((P1 * s.result()).div_lef_minus_one(1));
  }
  {
    MotiveAccumulator s;
    for (int k = 0; k <= 2 * (g - 1); ++k) {
      MotiveAccumulator row;
      for (int l = 0; l <= k; ++l)
        if ((l - k) % 3 != 0) row.add(sym(ctx, l));
      s.add(row.result() * sym(ctx, k));
    }
    for (int k = 2 * g - 1; k <= 3 * (g - 1); ++k) {
      MotiveAccumulator row;
      for (int l = 0; l <= 6 * (g - 1) - 2 * k; ++l)
        if ((l - k) % 3 != 0) row.add(sym(ctx, l));
      s.add(row.result() * sym(ctx, k));
    }
    acc.add(s.result());
  }
  return P1 * acc.result();
}

}  // namespace

HiggsReport m3_class(const CurveContext& ctx) {
  const int g = ctx.genus();
  const auto choice = select_prefactor(m3_core(ctx), 3, g, {-1, 1}, -1);
  return make_higgs_report(3, g, choice.value, choice.label, "rank 3 closed form; " + choice.note);
}

HiggsReport m3_class_via_strata(const CurveContext& ctx) {
  const int g = ctx.genus();
  const MotiveValue core = lef_minus_one() * higgs_strata_sum_box(ctx, 3);
  const auto choice = select_prefactor(core, 3, g, {1}, 1);
  return make_higgs_report(3, g, choice.value, choice.label,
                           "rank 3 from fixed-point strata (3), (2,1), (1,2), (1,1,1); " + choice.note);
}

// ---------------------------------------------------------------------------
// Rank 4

namespace {

/// Sum over 0 <= k <= K with 3k + 2l + m = 1 mod 4 of [C^(k)], from per-residue prefix sums.
class ResiduePrefix {
 public:
  ResiduePrefix(const CurveContext& ctx, std::int64_t kmax) : sums_(4) {
    std::vector<MotiveAccumulator> acc(4);
    for (std::int64_t k = 0; k <= kmax; ++k) {
      acc[static_cast<std::size_t>(k % 4)].add(sym(ctx, k));
      for (std::size_t r = 0; r < 4; ++r) sums_[r].push_back(acc[r].result());
    }
  }
  MotiveValue sum(std::int64_t residue, std::int64_t K) const {
    if (K < 0) return {};
    const auto& s = sums_[static_cast<std::size_t>(((residue % 4) + 4) % 4)];
    return s[static_cast<std::size_t>(std::min<std::int64_t>(K, static_cast<std::int64_t>(s.size()) - 1))];
  }

 private:
  std::vector<std::vector<MotiveValue>> sums_;
};

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

/// The (1,1,1,1) block without the [uPic] factor.
MotiveValue m4_line_chains(const CurveContext& ctx) {
  const std::int64_t g = ctx.genus();
  const ResiduePrefix prefix(ctx, 12 * g);
  // 3k = 1 - 2l - m mod 4 and 3 is its own inverse mod 4.
  auto residue = [](std::int64_t l, std::int64_t m) { return 3 * (1 - 2 * l - m); };
  MotiveAccumulator total;
  auto add_row = [&](MotiveAccumulator& row, std::int64_t l, std::int64_t m, std::int64_t K) {
    if (l < 0 || K < 0) return;
    const MotiveValue s = prefix.sum(residue(l, m), K);
    if (!s.is_zero()) row.add(sym(ctx, l) * s);
  };
  for (std::int64_t m = 0; m <= 2 * g - 2; ++m) {
    MotiveAccumulator row;
    // ceil(3(g-1) - m/2) - 1 and floor(4(g-1) - (m+2l)/3)
    for (std::int64_t l = 0; l <= ceil_div(6 * (g - 1) - m, 2) - 1; ++l)
      add_row(row, l, m, floor_div(12 * (g - 1) - m - 2 * l, 3));
    for (std::int64_t l = ceil_div(6 * (g - 1) - m, 2); l <= floor_div(8 * (g - 1) - m, 2); ++l)
      add_row(row, l, m, 8 * g - 8 - m - 2 * l);
    total.add(sym(ctx, m) * row.result());
  }
  for (std::int64_t m = 2 * g - 1; m <= 4 * g - 4; ++m) {
    MotiveAccumulator row;
    for (std::int64_t l = 0; l <= 6 * g - 6 - 2 * m; ++l) add_row(row, l, m, floor_div(12 * (g - 1) - m - 2 * l, 3));
    for (std::int64_t l = 6 * g - 6 - 2 * m + 1; l <= floor_div(12 * (g - 1) - 3 * m, 2); ++l)
      add_row(row, l, m, 12 * g - 12 - 3 * m - 2 * l);
    total.add(sym(ctx, m) * row.result());
  }
  return total.result();
}

}  // namespace

MotiveValue m4_strata_sum(const CurveContext& ctx) {
  const std::int64_t g = ctx.genus();
  const PerturbedRational s = higgs_sigma(static_cast<int>(g));
  MotiveAccumulator acc;
  acc.add(ctx.bun_ss(4, 1));
  for (std::int64_t k = g - 1; k <= 3 * g - 4; ++k) acc.add(m31_ss(ctx, 2 * k + 1, s));
  for (std::int64_t k = 0; k <= 2 * g - 3; ++k) acc.add(m22_ss(ctx, 2 * k + 1, s));
  // (1,2,1): floor(5(4k+1)/8)
  for (std::int64_t k = 0; k <= g - 2; ++k)
    for (std::int64_t l = k + 1; l <= floor_div(5 * (4 * k + 1), 8); ++l) acc.add(m121_ss(ctx, 4 * k + 1 - l, l, s));
  for (std::int64_t k = g - 1; k <= 2 * g - 3; ++k)
    for (std::int64_t l = 3 * k + 1 - (2 * g - 2); l <= floor_div(5 * (4 * k + 1), 8); ++l)
      acc.add(m121_ss(ctx, 4 * k + 1 - l, l, s));
  // (2,1,1) and its dual: k from floor(5l/3 + 2g - 2) + 1 with k + l odd
  for (std::int64_t l = 0; l <= 3 * g - 3; ++l) {
    const std::int64_t top = l <= 2 * g - 2 ? l + 6 * g - 6 : 10 * g - 10 - l;
    for (std::int64_t k = floor_div(5 * l, 3) + 2 * g - 2 + 1; k <= top; ++k)
      if ((k + l) % 2 != 0) acc.add(m211_ss(ctx, k, l, 0, s));
  }
  acc.add(ctx.upic() * m4_line_chains(ctx));
  return acc.result();
}

HiggsReport m4_class(const CurveContext& ctx) {
  const int g = ctx.genus();
  const MotiveValue core = lef_minus_one() * m4_strata_sum(ctx);
  const auto choice = select_prefactor(core, 4, g, {0, 1}, 0);
  return make_higgs_report(4, g, choice.value, choice.label,
                           "rank 4 from the fixed-point strata windows; " + choice.note);
}

// ---------------------------------------------------------------------------
// Box enumeration

namespace {

void compositions(int n, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = 1; k <= n; ++k) {
    cur.push_back(k);
    compositions(n - k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

MotiveValue higgs_strata_sum_box(const CurveContext& ctx, int n) {
  const std::int64_t g = ctx.genus();
  const PerturbedRational s = higgs_sigma(static_cast<int>(g));
  std::vector<std::vector<int>> shapes;
  std::vector<int> cur;
  compositions(n, cur, shapes);
  const std::int64_t B = 2 * n * (2 * g - 2) + 2;
  MotiveAccumulator acc;
  for (const auto& rank : shapes) {
    const std::size_t r = rank.size() - 1;
    if (r == 0) {
      acc.add(ctx.bun_ss(n, 1));
      continue;
    }
    std::int64_t c = 0;
    for (std::size_t i = 0; i <= r; ++i) c += static_cast<std::int64_t>(r - i) * rank[i] * (2 * g - 2);
    const bool all_lines = std::all_of(rank.begin(), rank.end(), [](int x) { return x == 1; });
    const auto alpha = arithmetic_alpha(static_cast<int>(r + 1), s);
    std::vector<std::int64_t> delta(r + 1, -B), deg(r + 1);
    if (all_lines) std::fill(delta.begin(), delta.end(), 0);
    // delta[j] = d_{j-1} - d_j for j = 1..r
    while (true) {
      std::int64_t weighted = 0;
      for (std::size_t j = 1; j <= r; ++j) weighted += static_cast<std::int64_t>(j) * delta[j];
      const std::int64_t rhs = 1 + c - weighted;
      if (rhs % static_cast<std::int64_t>(r + 1) == 0) {
        deg[r] = rhs / static_cast<std::int64_t>(r + 1);
        for (std::size_t j = r; j >= 1; --j) deg[j - 1] = deg[j] + delta[j];
        // Truncations E_j -> ... -> E_0 are subchains, so their slope cannot exceed the total.
        const PerturbedRational mu = piece_slope({rank, deg}, alpha);
        bool ok = true;
        for (std::size_t j = 0; j < r && ok; ++j) {
          ChainPiece sub{rank, deg};
          for (std::size_t i = j + 1; i <= r; ++i) sub.rank[i] = 0, sub.deg[i] = 0;
          if (piece_slope(sub, alpha) > mu) ok = false;
        }
        if (ok) {
          const MotiveValue v = chain_ss(ctx, rank, deg, s);
          if (!v.is_zero()) {
            for (std::size_t j = 1; j <= r; ++j)
              if (delta[j] == B || delta[j] == -B)
                throw MotiveError(ErrorKind::InvariantViolation, "degree box too small for rank " + std::to_string(n));
            acc.add(v);
          }
        }
      }
      std::size_t j = 1;
      while (j <= r && delta[j] == B) delta[j++] = all_lines ? 0 : -B;
      if (j > r) break;
      ++delta[j];
    }
  }
  return acc.result();
}

HiggsReport report(const CurveContext& ctx, HiggsSpace which) {
  switch (which) {
    case HiggsSpace::M2: return m2_class(ctx);
    case HiggsSpace::M3: return m3_class(ctx);
    case HiggsSpace::M4: return m4_class(ctx);
  }
  throw MotiveError(ErrorKind::InvalidArgument, "unknown Higgs space");
}

}  // namespace motive
