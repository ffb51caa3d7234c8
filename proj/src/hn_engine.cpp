#include "motive/chains.hpp"

#include "chain_util.hpp"
#include "motive/errors.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace motive {

using detail::pr;

struct HNEngine::Normalized {
  std::vector<int> rank;
  std::vector<std::int64_t> deg;
  std::vector<PerturbedRational> alpha;
  std::string key;

  int m() const { return rank.front(); }
  std::size_t r() const { return rank.size() - 1; }
};

namespace {

/// A candidate subquotient shape: a bundle of rank k at position 0, a chain of rank
/// (k,1,...,1) on positions [0,b], or a chain of rank (1,...,1) on positions [a,b], a >= 1.
struct Shape {
  enum Kind { Bundle = 0, Head = 1, Interval = 2 };
  int kind = Bundle;
  int k = 0;
  int a = 0;
  int b = 0;
  auto operator<=>(const Shape&) const = default;
};

void integer_partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    integer_partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

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

/// All multisets of shapes covering rank (m,1,...,1) other than the whole chain.
std::vector<std::vector<Shape>> shape_multisets(int m, int r) {
  std::vector<std::vector<Shape>> out;
  std::vector<std::vector<int>> comps;
  std::vector<int> cur;
  compositions(r, cur, comps);
  for (const auto& comp : comps) {
    std::vector<Shape> intervals;
    int pos = 1;
    for (int len : comp) {
      intervals.push_back({Shape::Interval, 1, pos, pos + len - 1});
      pos += len;
    }
    for (int k = 0; k <= m; ++k) {
      std::vector<Shape> base = intervals;
      if (k > 0) {
        base.front() = {Shape::Head, k, 0, intervals.front().b};
        if (k == m && comp.size() == 1) continue;  // the chain itself
      }
      std::vector<std::vector<int>> parts;
      std::vector<int> pc;
      integer_partitions(m - k, m - k, pc, parts);
      for (const auto& p : parts) {
        std::vector<Shape> s = base;
        for (int b : p) s.push_back({Shape::Bundle, b, 0, 0});
        std::sort(s.begin(), s.end());
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

ChainPiece make_piece(const Shape& s, std::int64_t e0, const std::vector<std::int64_t>& deg) {
  ChainPiece p;
  p.rank.assign(deg.size(), 0);
  p.deg.assign(deg.size(), 0);
  if (s.kind == Shape::Bundle) {
    p.rank[0] = s.k;
    p.deg[0] = e0;
    return p;
  }
  if (s.kind == Shape::Head) {
    p.rank[0] = s.k;
    p.deg[0] = e0;
  }
  for (int i = std::max(s.a, 1); i <= s.b; ++i) {
    p.rank[static_cast<std::size_t>(i)] = 1;
    p.deg[static_cast<std::size_t>(i)] = deg[static_cast<std::size_t>(i)];
  }
  return p;
}

bool strictly_decreasing(const std::vector<ChainPiece>& pieces, const std::vector<PerturbedRational>& alpha) {
  for (std::size_t i = 1; i < pieces.size(); ++i)
    if (!(piece_slope(pieces[i - 1], alpha) > piece_slope(pieces[i], alpha))) return false;
  return true;
}

constexpr std::int64_t kNoBound = std::numeric_limits<std::int64_t>::min();

/// Enumerates HN types of a normalized (m,1,...,1) chain and sums term() over them. Finite
/// families are visited one by one. When bundles are unbounded on both sides, the tail bundles
/// are summed level by level with a verified quasi-geometric fit and the head bundles, whose
/// degree sum is then fixed, are enumerated directly. Without term(), only finite families are
/// visited.
class Enumerator {
 public:
  using TermFn = std::function<MotiveValue(const std::vector<ChainPiece>&)>;
  using VisitFn = std::function<void(const std::vector<ChainPiece>&)>;
  using ExponentFn = std::function<std::int64_t(const std::vector<ChainPiece>&)>;

  Enumerator(const std::vector<int>& rank, const std::vector<std::int64_t>& deg,
             const std::vector<PerturbedRational>& alpha, TermFn term, ExponentFn exponent, VisitFn visit = {})
      : rank_(rank),
        deg_(deg),
        alpha_(alpha),
        term_(std::move(term)),
        exponent_(std::move(exponent)),
        visit_(std::move(visit)) {}

  MotiveValue run() {
    const int m = rank_.front();
    const int r = static_cast<int>(rank_.size()) - 1;
    for (auto shapes : shape_multisets(m, r)) {
      do {
        sequence(shapes);
      } while (std::next_permutation(shapes.begin(), shapes.end()));
    }
    return acc_.result();
  }

 private:
  /// Window for the position-0 degree of a head piece, from the necessary conditions
  /// E_0 not destabilizing and E_0 / im(E_1) not destabilizing, widened by one.
  std::pair<std::int64_t, std::int64_t> head_window(const Shape& s) const {
    const int k = s.k;
    const int len = s.b;
    PerturbedRational T = pr(0), A = Rational(k) * alpha_[0];
    for (int i = 1; i <= len; ++i) {
      T = T + pr(deg_[static_cast<std::size_t>(i)]);
      A = A + alpha_[static_cast<std::size_t>(i)];
    }
    const std::int64_t N = k + len;
    const PerturbedRational ub = (Rational(k) * (T + A - Rational(N) * alpha_[0])) / Rational(N - k);
    std::int64_t lo;
    if (k == 1) {
      lo = deg_[1];
    } else {
      const PerturbedRational x = Rational(N) * pr(deg_[1]) - Rational(N * (k - 1)) * alpha_[0] +
                                  Rational(k - 1) * (T + A);
      lo = (x / Rational(N - k + 1)).ceil();
    }
    return {lo - 1, ub.floor() + 1};
  }

  void sequence(const std::vector<Shape>& seq) {
    std::optional<std::size_t> head;
    std::vector<std::size_t> bundles;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (seq[i].kind == Shape::Head) head = i;
      if (seq[i].kind == Shape::Bundle) bundles.push_back(i);
    }
    const std::int64_t d0 = deg_[0];
    if (!head) {
      assign(seq, 0, bundles, d0);
    } else if (bundles.empty()) {
      assign(seq, d0, bundles, 0);
    } else {
      auto [lo, hi] = head_window(seq[*head]);
      for (std::int64_t e = lo; e <= hi; ++e) assign(seq, e, bundles, d0 - e);
    }
  }

  /// Fixed head degree e_head; bundle degrees still free with sum S.
  void assign(const std::vector<Shape>& seq, std::int64_t e_head, const std::vector<std::size_t>& bundles,
              std::int64_t S) {
    const std::size_t n = seq.size();
    std::vector<ChainPiece> pieces(n);
    std::vector<std::optional<PerturbedRational>> slope(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (seq[i].kind == Shape::Bundle) continue;
      pieces[i] = make_piece(seq[i], e_head, deg_);
      slope[i] = piece_slope(pieces[i], alpha_);
    }
    // Fixed pieces must already be in strictly decreasing order.
    std::optional<PerturbedRational> last;
    for (std::size_t i = 0; i < n; ++i) {
      if (!slope[i]) continue;
      if (last && !(*last > *slope[i])) return;
      last = slope[i];
    }
    if (bundles.empty()) {
      if (strictly_decreasing(pieces, alpha_)) finite(pieces);
      return;
    }
    // Bounds from the neighbouring fixed pieces: e/b + alpha_0 below the previous, above the next.
    const std::size_t nb = bundles.size();
    std::vector<std::int64_t> lb(nb, kNoBound), ub(nb, kNoBound);
    std::vector<std::size_t> head_group, tail_group, middle;
    for (std::size_t j = 0; j < nb; ++j) {
      const std::size_t p = bundles[j];
      const Rational b = seq[p].k;
      bool before = false, after = false;
      for (std::size_t i = p; i-- > 0;) {
        if (slope[i]) {
          ub[j] = (b * (*slope[i] - alpha_[0])).ceil() - 1;
          before = true;
          break;
        }
      }
      for (std::size_t i = p + 1; i < n; ++i) {
        if (slope[i]) {
          lb[j] = (b * (*slope[i] - alpha_[0])).floor() + 1;
          after = true;
          break;
        }
      }
      if (!before) head_group.push_back(j);
      else if (!after) tail_group.push_back(j);
      else middle.push_back(j);
    }
    if (!head_group.empty() && !tail_group.empty()) {
      if (!term_) return;
      Cone cone{seq, pieces, bundles, lb, ub, head_group, tail_group};
      enumerate_middle(cone, middle, 0, S);
      return;
    }
    // One-sided: every bundle is bounded on the same side, so the sum bounds the other side.
    if (tail_group.empty()) {
      std::int64_t sum_lb = 0;
      for (std::size_t j = 0; j < nb; ++j) sum_lb += lb[j];
      for (std::size_t j = 0; j < nb; ++j) {
        const std::int64_t cap = S - (sum_lb - lb[j]);
        ub[j] = ub[j] == kNoBound ? cap : std::min(ub[j], cap);
      }
    } else {
      std::int64_t sum_ub = 0;
      for (std::size_t j = 0; j < nb; ++j) sum_ub += ub[j];
      for (std::size_t j = 0; j < nb; ++j) {
        const std::int64_t floor_ = S - (sum_ub - ub[j]);
        lb[j] = lb[j] == kNoBound ? floor_ : std::max(lb[j], floor_);
      }
    }
    std::vector<std::int64_t> e(nb);
    finite_bundles(seq, pieces, bundles, lb, ub, e, 0, S);
  }

  void finite_bundles(const std::vector<Shape>& seq, std::vector<ChainPiece>& pieces,
                      const std::vector<std::size_t>& bundles, const std::vector<std::int64_t>& lb,
                      const std::vector<std::int64_t>& ub, std::vector<std::int64_t>& e, std::size_t j,
                      std::int64_t rest) {
    const std::size_t nb = bundles.size();
    if (j + 1 == nb) {
      if (rest < lb[j] || rest > ub[j]) return;
      e[j] = rest;
      for (std::size_t i = 0; i < nb; ++i) pieces[bundles[i]] = make_piece(seq[bundles[i]], e[i], deg_);
      if (strictly_decreasing(pieces, alpha_)) finite(pieces);
      return;
    }
    for (std::int64_t x = lb[j]; x <= ub[j]; ++x) {
      e[j] = x;
      finite_bundles(seq, pieces, bundles, lb, ub, e, j + 1, rest - x);
    }
  }

  /// State of one family whose head and tail bundle groups are both unbounded.
  struct Cone {
    const std::vector<Shape>& seq;
    std::vector<ChainPiece>& pieces;
    const std::vector<std::size_t>& bundles;
    const std::vector<std::int64_t>& lb;
    const std::vector<std::int64_t>& ub;
    const std::vector<std::size_t>& head;
    const std::vector<std::size_t>& tail;
    int period = 1;

    int rank_of(std::size_t j) const { return seq[bundles[j]].k; }
  };

  void finite(const std::vector<ChainPiece>& pieces) {
    if (visit_) visit_(pieces);
    if (term_) acc_.add(term_(pieces));
  }

  void set_bundle(Cone& c, std::size_t j, std::int64_t e) const {
    c.pieces[c.bundles[j]] = make_piece(c.seq[c.bundles[j]], e, deg_);
  }

  void enumerate_middle(Cone& c, const std::vector<std::size_t>& middle, std::size_t idx, std::int64_t rest) {
    if (idx < middle.size()) {
      const std::size_t j = middle[idx];
      for (std::int64_t x = c.lb[j]; x <= c.ub[j]; ++x) {
        set_bundle(c, j, x);
        enumerate_middle(c, middle, idx + 1, rest - x);
      }
      return;
    }
    if (c.head.size() == 1 && c.tail.size() == 1) {
      acc_.add(pair_sum(c, rest));
      return;
    }
    // Each tail level contributes its rank to the period; the head group contributes the
    // period of splitting a fixed degree sum among its bundles.
    int head_lcm = 1, head_rank = 0;
    for (std::size_t j : c.head) {
      head_lcm = std::lcm(head_lcm, c.rank_of(j));
      head_rank += c.rank_of(j);
    }
    c.period = c.head.size() == 1 ? head_lcm : head_lcm * head_rank;
    for (std::size_t j : c.tail) c.period *= c.rank_of(j);
    acc_.add(tail_level(c, 0, c.ub[c.tail[0]], rest));
  }

  /// One head bundle of degree x >= x_min and one tail bundle of degree rest - x: every
  /// constraint involving x holds from x_min on, and the summand is geometric with period lcm.
  MotiveValue pair_sum(Cone& c, std::int64_t rest) {
    const std::size_t h = c.head[0], t = c.tail[0];
    const std::int64_t x_min = std::max(c.lb[h], rest - c.ub[t]);
    const int period = std::lcm(c.rank_of(h), c.rank_of(t));
    std::vector<std::int64_t> exps;
    MotiveAccumulator first;
    for (int i = 0; i <= period; ++i) {
      set_bundle(c, h, x_min + i);
      set_bundle(c, t, rest - x_min - i);
      if (!strictly_decreasing(c.pieces, alpha_)) {
        if (i == 0) return {};  // a middle constraint fails independently of x
        throw MotiveError(ErrorKind::InvariantViolation, "tail family lost its ordering");
      }
      exps.push_back(exponent_(c.pieces));
      if (i < period) first.add(term_(c.pieces));
    }
    const MotiveValue a = first.result();
    if (a.is_zero()) return {};
    const std::int64_t step = exps[static_cast<std::size_t>(period)] - exps[0];
    if (step >= 0)
      throw MotiveError(ErrorKind::UnboundedEnumeration, "tail family does not decay (step " + std::to_string(step) + ")");
    return a.div_binomial(step, step);
  }

  /// Sum over tail bundle j of degree t <= upper (and all later tail bundles).
  MotiveValue tail_level(Cone& c, std::size_t j, std::int64_t upper, std::int64_t rest) {
    if (j == c.tail.size()) return head_sum(c, rest);
    // Past x0 every bound that mixes this level with the others has settled. At the last
    // level with a single head bundle the only such bound is folded into upper.
    std::int64_t sum_lb = 0, scale = std::abs(upper) + std::abs(rest) + 2;
    for (std::size_t i : c.head) {
      sum_lb += c.lb[i];
      scale += std::abs(c.lb[i]);
    }
    std::int64_t x0 = rank_.front() * scale;
    if (j + 1 == c.tail.size() && c.head.size() == 1) {
      upper = std::min(upper, rest - sum_lb);
      x0 = 0;
    }
    auto F = [&, j, upper, rest](std::int64_t x) {
      const std::int64_t t = upper - x;
      set_bundle(c, c.tail[j], t);
      std::int64_t next = 0;
      if (j + 1 < c.tail.size()) {
        // t'/b' < t/b for the next tail bundle.
        const Rational bound = Rational(c.rank_of(c.tail[j + 1])) * Rational(t) / Rational(c.rank_of(c.tail[j]));
        next = PerturbedRational(bound).ceil() - 1;
      }
      return tail_level(c, j + 1, next, rest - t);
    };
    MotiveAccumulator acc;
    for (std::int64_t x = 0; x < x0; ++x) acc.add(F(x));
    acc.add(sum_quasi_geometric_auto(F, x0, c.period));
    return acc.result();
  }

  /// Head bundles with fixed degree sum Y, each bounded below by the first fixed piece.
  MotiveValue head_sum(Cone& c, std::int64_t Y) {
    MotiveAccumulator acc;
    std::int64_t sum_lb = 0;
    for (std::size_t j : c.head) sum_lb += c.lb[j];
    head_level(c, 0, Y, sum_lb, acc);
    return acc.result();
  }

  void head_level(Cone& c, std::size_t i, std::int64_t rest, std::int64_t rest_lb, MotiveAccumulator& acc) {
    const std::size_t j = c.head[i];
    if (i + 1 == c.head.size()) {
      if (rest < c.lb[j]) return;
      set_bundle(c, j, rest);
      if (strictly_decreasing(c.pieces, alpha_)) acc.add(term_(c.pieces));
      return;
    }
    const std::int64_t others = rest_lb - c.lb[j];
    for (std::int64_t x = c.lb[j]; x <= rest - others; ++x) {
      set_bundle(c, j, x);
      head_level(c, i + 1, rest - x, others, acc);
    }
  }

  const std::vector<int>& rank_;
  const std::vector<std::int64_t>& deg_;
  const std::vector<PerturbedRational>& alpha_;
  TermFn term_;
  ExponentFn exponent_;
  VisitFn visit_;
  MotiveAccumulator acc_;
};

}  // namespace

HNEngine::Normalized HNEngine::normalize(const ChainSpec& spec) const {
  spec.validate();
  std::size_t first = 0, last = spec.rank.size() - 1;
  while (spec.rank[first] == 0) ++first;
  while (spec.rank[last] == 0) --last;
  ChainSpec s;
  for (std::size_t i = first; i <= last; ++i) {
    if (spec.rank[i] == 0) throw MotiveError(ErrorKind::UnsupportedRank, "interior zero rank");
    s.rank.push_back(spec.rank[i]);
    s.deg.push_back(spec.deg[i]);
    s.alpha.push_back(spec.alpha[i]);
  }
  const std::size_t r = s.rank.size() - 1;
  if (r > 0) {
    const bool tail_ones = std::all_of(s.rank.begin() + 1, s.rank.end(), [](int n) { return n == 1; });
    const bool head_ones = std::all_of(s.rank.begin(), s.rank.end() - 1, [](int n) { return n == 1; });
    if (!tail_ones) {
      if (!head_ones) throw MotiveError(ErrorKind::UnsupportedRank, "rank vector is not (m,1,...,1) or (1,...,1,m)");
      s = dualize(s);
    }
  }
  Normalized n;
  n.rank = s.rank;
  n.deg = s.deg;
  for (const auto& a : s.alpha) n.alpha.push_back(a - s.alpha.front());
  if (r > 0) {
    const std::int64_t t = n.deg.back();  // n_r = 1
    for (std::size_t i = 0; i <= r; ++i) n.deg[i] -= n.rank[i] * t;
  }
  ChainSpec keyed{n.rank, n.deg, n.alpha};
  n.key = keyed.key();
  return n;
}

MotiveValue HNEngine::total_class(const ChainSpec& spec) const {
  spec.validate();
  for (std::size_t i = 0; i < spec.rank.size(); ++i)
    if (spec.rank[i] == 0 && spec.deg[i] != 0) return {};
  const Normalized n = normalize(spec);
  const std::size_t r = n.r();
  MotiveAccumulator acc;
  // Each subset of vanishing maps splits the chain into blocks with injective maps.
  for (std::uint32_t zero = 0; zero < (1U << r); ++zero) {
    MotiveValue v(1);
    std::size_t start = 0;
    for (std::size_t i = 1; i <= r + 1; ++i) {
      if (i == r + 1 || (zero >> (i - 1)) & 1U) {
        std::vector<int> rk;
        std::vector<std::int64_t> dg;
        for (std::size_t j = i; j-- > start;) {
          rk.push_back(n.rank[j]);
          dg.push_back(-n.deg[j]);
        }
        v *= gen_surj_class(ctx_, rk, dg);
        start = i;
      }
    }
    acc.add(v);
  }
  return acc.result();
}

MotiveValue HNEngine::piece_ss(const ChainPiece& p, const std::vector<PerturbedRational>& alpha) const {
  return generic_ss(ChainSpec{p.rank, p.deg, alpha});
}

MotiveValue HNEngine::generic_ss(const ChainSpec& spec) const {
  spec.validate();
  for (std::size_t i = 0; i < spec.rank.size(); ++i)
    if (spec.rank[i] == 0 && spec.deg[i] != 0) return {};
  const Normalized n = normalize(spec);
  return memo_.get(n.key, [&] { return compute(n); });
}

MotiveValue HNEngine::compute(const Normalized& n) const {
  if (n.r() == 0) return ctx_.bun_ss(n.m(), n.deg[0]);
  const int g = ctx_.genus();
  auto term = [&](const std::vector<ChainPiece>& pieces) {
    MotiveValue v(1);
    for (const auto& p : pieces) {
      v *= piece_ss(p, n.alpha);
      if (v.is_zero()) return v;
    }
    return v.mul_lef(hn_exponent(pieces, g));
  };
  Enumerator en(n.rank, n.deg, n.alpha, term, [g](const std::vector<ChainPiece>& p) { return hn_exponent(p, g); });
  const MotiveValue strata = en.run();
  return total_class(ChainSpec{n.rank, n.deg, n.alpha}) - strata;
}

std::vector<HNType> HNEngine::hn_types(const ChainSpec& spec) const {
  spec.validate();
  const Normalized n = normalize(spec);
  std::vector<HNType> out;
  if (n.r() == 0) return out;
  Enumerator en(n.rank, n.deg, n.alpha, {}, {}, [&](const std::vector<ChainPiece>& p) { out.push_back({p}); });
  en.run();
  return out;
}

}  // namespace motive
