#pragma once

#include "motive/chains.hpp"
#include "motive/curve.hpp"
#include "motive/motive_value.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace motive {

/// Moduli spaces of stable Higgs bundles of degree 1 handled by the assembly.
enum class HiggsSpace { M2, M3, M4 };

int higgs_rank(HiggsSpace s);
/// "higgs2", "higgs3", "higgs4".
std::string higgs_space_name(HiggsSpace s);

/// E-polynomial of M_n^1 with its derived invariants.
struct HiggsReport {
  int rank = 0;
  int degree = 1;
  int genus = 0;
  /// 2 n^2 (g - 1) + 2.
  std::int64_t dim = 0;
  BivariateLaurent e_poly;
  /// b_0, ..., b_{2 dim} under purity.
  std::vector<Integer> betti;
  std::vector<HodgeEntry> hodge;
  /// The L-power in front of the fixed-point sum, e.g. "L^(16(g-1)+1)".
  std::string prefactor_convention;
  /// Which assembly produced e_poly and which checks it passed.
  std::string provenance;
};

/// 2 n^2 (g - 1) + 2.
std::int64_t higgs_dimension(int n, int g);

/// A resolved L-prefactor: the prefactored value, its label and a one-line note.
struct PrefactorChoice {
  MotiveValue value;
  std::string label;
  std::string note;
};

/// Multiplies core by L^{n^2(g-1)+shift} for the unique candidate shift whose top total degree
/// is 2 dim; PrefactorUnresolvable if none or several qualify. nominal_shift only affects the note.
PrefactorChoice select_prefactor(const MotiveValue& core, int n, int g, const std::vector<int>& shifts,
                                 int nominal_shift);

/// Rank 2 closed form with the finite sum over odd symmetric powers.
MotiveValue m2_closed_form(const CurveContext& ctx);
/// Rank 2 closed form through the odd part of the zeta function, evaluated as a limit at t = 1.
MotiveValue m2_zeta_form(const CurveContext& ctx);
/// Both rank 2 forms; FormMismatch if they differ.
HiggsReport m2_class(const CurveContext& ctx);

/// Rank 3 closed form; the L-prefactor is resolved by the dimension check.
HiggsReport m3_class(const CurveContext& ctx);
/// Rank 3 from the fixed-point strata: (3), (2,1), (1,2) by duality, and (1,1,1).
HiggsReport m3_class_via_strata(const CurveContext& ctx);

/// Sum of the semistable stack classes over the fixed-point strata of M_4^1, with the
/// summation windows of the rank 4 assembly.
MotiveValue m4_strata_sum(const CurveContext& ctx);
/// Rank 4 assembly; PrefactorUnresolvable if no candidate L-power gives the expected dimension.
HiggsReport m4_class(const CurveContext& ctx);

/// Sum over every chain type of total rank n and every degree vector of Higgs degree 1 in a
/// box, each class through chain_ss. Independent of the listed windows; for checks.
MotiveValue higgs_strata_sum_box(const CurveContext& ctx, int n);

/// Uniform entry point.
HiggsReport report(const CurveContext& ctx, HiggsSpace which);

/// Checks polynomiality, the top monomial (uv)^dim with coefficient 1, u <-> v symmetry,
/// E(1,1) = 0, nonnegative Betti numbers and b_0 = 1; fills betti and hodge.
/// Throws InvariantViolation naming the first failed check.
HiggsReport make_higgs_report(int n, int g, const MotiveValue& value, std::string convention, std::string provenance);

}  // namespace motive
