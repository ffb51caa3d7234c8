#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace motive {

/// Outcome of one verification suite: a count of checks and the identifiers of the failing ones.
struct SuiteReport {
  std::string name;
  std::size_t total = 0;
  std::vector<std::string> failures;
  /// Free-form context such as the random seed.
  std::string note;

  void check(bool ok, const std::string& id);
  bool passed() const { return failures.empty(); }
};

/// Seed used by the ring suite unless another is given.
inline constexpr std::uint64_t kRingSeed = 20240611;

/// Randomized ring identities on MotiveValue: associativity, commutativity, distributivity,
/// reduction idempotence and binomial division roundtrips; `checks` identities in total.
SuiteReport ring_suite(std::uint64_t seed = kRingSeed, int checks = 10000);
/// Functional equation, tail-sum identity, sym_curve past 2g-2 and the Sym^l(P^{n-1}) recursion.
SuiteReport curve_suite();
/// bun_ss against the rank 2 closed form and the rank 3 HN recursion; per-term exponent integrality.
SuiteReport bun_suite();
/// generic_ss against the closed chain forms on full windows, duality, and zeros outside the windows.
SuiteReport chain_suite();
/// Rank 3 closed form against the strata assembly, rank 4 windows against the box enumeration,
/// and the m31 and m22 closed forms against their stratum re-assemblies.
SuiteReport dualpath_suite();
/// Invariant battery for M_n^1 over the given genera; rank 2 also compares its two forms.
SuiteReport higgs_suite(int rank, const std::vector<int>& genera);

/// "ring", "curve", "chains", "dualpath", "higgs".
const std::vector<std::string>& suite_names();
/// Runs a named suite; "curve" includes the bun checks and "higgs" covers ranks 2 to 4.
/// Throws InvalidArgument for an unknown name.
std::vector<SuiteReport> run_suite(const std::string& name);

}  // namespace motive
