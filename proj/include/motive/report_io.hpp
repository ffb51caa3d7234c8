#pragma once

#include "motive/curve.hpp"
#include "motive/higgs.hpp"
#include "motive/motive_value.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace motive {

/// One computed class ready for serialization.
struct Record {
  /// "higgs2", "higgs3", "higgs4" or "chain".
  std::string space;
  int genus = 0;
  /// {n} for Higgs spaces, the rank vector for chains.
  std::vector<int> rank;
  /// {1} for Higgs spaces, the degree vector for chains.
  std::vector<std::int64_t> degree;
  /// Chains only: sigma = 2g - 2 + offset + eps.
  std::int64_t sigma_offset = 0;
  /// Complex dimension; Higgs spaces only.
  std::optional<std::int64_t> dimension;
  std::string prefactor_convention;
  std::string provenance;
  /// E-image as num / den; den is empty for Higgs spaces.
  BivariateLaurent e_num;
  std::vector<BinomialFactor> e_den;
  std::vector<Integer> betti;
  std::vector<HodgeEntry> hodge;

  bool is_chain() const { return space == "chain"; }
  bool operator==(const Record&) const;
};

Record higgs_record(const HiggsReport& r);
Record chain_record(int genus, const std::vector<int>& rank, const std::vector<std::int64_t>& degree,
                    std::int64_t sigma_offset, const MotiveValue& value);

enum class OutputFormat { Json, Csv, Latex, Text };

std::optional<OutputFormat> parse_format(std::string_view s);

/// JSON array of records. Higgs records follow the fixed schema
/// {space, genus, rank, degree, dimension, prefactor_convention, e_polynomial, betti, hodge};
/// chain records carry rank and degree arrays, the sigma offset and the denominator factors.
std::string to_json(const std::vector<Record>& records);
/// Long format: space,genus,rank,degree,kind,p,q,k,value with kind in {e, den, betti, hodge}.
std::string to_csv(const std::vector<Record>& records);
/// Poincare polynomials only; InvalidArgument for chain records.
std::string to_latex(const std::vector<Record>& records);
/// Human-readable summary including the provenance line.
std::string to_text(const std::vector<Record>& records);
std::string render(const std::vector<Record>& records, OutputFormat format);

/// Lossless round trip used by the result cache.
std::string record_to_cache(const Record& r);
/// InvalidArgument if the text is not a cache entry of the current version.
Record record_from_cache(const std::string& text);

}  // namespace motive
