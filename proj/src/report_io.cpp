#include "motive/report_io.hpp"

#include "motive/errors.hpp"

#include <fmt/format.h>
#include <json.hpp>

namespace motive {

namespace {

/// Bumped whenever the cache layout or any computed value changes.
constexpr int kCacheVersion = 1;

std::string dec(const Integer& x) { return x.get_str(); }

template <class T>
std::string join(const std::vector<T>& xs, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += fmt::format("{}", xs[i]);
  }
  return out;
}

std::string betti_list(const std::vector<Integer>& b) {
  std::vector<std::string> s;
  s.reserve(b.size());
  for (const auto& x : b) s.push_back(dec(x));
  return join(s, ", ");
}

/// String fields here are generated internally; only quotes and backslashes need escaping.
std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void json_terms(std::string& out, const BivariateLaurent& p) {
  out += "[";
  for (std::size_t i = 0; i < p.terms().size(); ++i) {
    const auto& [e, c] = p.terms()[i];
    out += fmt::format("{}\n      {{\"u\": {}, \"v\": {}, \"coeff\": \"{}\"}}", i ? "," : "", e.u, e.v, dec(c));
  }
  out += p.is_zero() ? "]" : "\n    ]";
}

void json_record(std::string& out, const Record& r) {
  out += "  {\n";
  out += fmt::format("    \"space\": {},\n", quoted(r.space));
  out += fmt::format("    \"genus\": {},\n", r.genus);
  if (r.is_chain()) {
    out += fmt::format("    \"rank\": [{}],\n", join(r.rank, ", "));
    out += fmt::format("    \"degree\": [{}],\n", join(r.degree, ", "));
    out += fmt::format("    \"sigma_offset\": {},\n", r.sigma_offset);
  } else {
    out += fmt::format("    \"rank\": {},\n", r.rank.at(0));
    out += fmt::format("    \"degree\": {},\n", r.degree.at(0));
  }
  out += r.dimension ? fmt::format("    \"dimension\": {},\n", *r.dimension) : "    \"dimension\": null,\n";
  out += fmt::format("    \"prefactor_convention\": {},\n", quoted(r.prefactor_convention));
  out += "    \"e_polynomial\": ";
  json_terms(out, r.e_num);
  out += ",\n";
  if (r.is_chain()) {
    out += "    \"denominator\": [";
    for (std::size_t i = 0; i < r.e_den.size(); ++i)
      out += fmt::format("{}{{\"u\": {}, \"v\": {}, \"mult\": {}}}", i ? ", " : "", r.e_den[i].a, r.e_den[i].b,
                         r.e_den[i].mult);
    out += "],\n";
  }
  out += fmt::format("    \"betti\": [{}],\n", betti_list(r.betti));
  out += "    \"hodge\": [";
  for (std::size_t i = 0; i < r.hodge.size(); ++i) {
    const auto& h = r.hodge[i];
    out += fmt::format("{}\n      {{\"p\": {}, \"q\": {}, \"k\": {}, \"h\": \"{}\"}}", i ? "," : "", h.p, h.q, h.k,
                       dec(h.h));
  }
  out += r.hodge.empty() ? "]\n" : "\n    ]\n";
  out += "  }";
}

std::string rank_label(const Record& r) { return join(r.rank, "/"); }
std::string degree_label(const Record& r) { return join(r.degree, "/"); }

/// "\mathcal{M}_{4}^{1}" for Higgs records.
std::string latex_name(const Record& r) { return fmt::format("\\mathcal{{M}}_{{{}}}^{{{}}}", r.rank.at(0), r.degree.at(0)); }

std::string latex_poincare(const std::vector<Integer>& b) {
  std::string out;
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (b[k] == 0) continue;
    const std::string mag = dec(abs(b[k]));
    const bool neg = b[k] < 0;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    const bool unit = mag == "1";
    if (k == 0)
      out += mag;
    else
      out += fmt::format("{}t{}", unit ? "" : mag, k == 1 ? "" : fmt::format("^{{{}}}", k));
  }
  return out.empty() ? "0" : out;
}

}  // namespace

bool Record::operator==(const Record& o) const {
  return space == o.space && genus == o.genus && rank == o.rank && degree == o.degree &&
         sigma_offset == o.sigma_offset && dimension == o.dimension &&
         prefactor_convention == o.prefactor_convention && provenance == o.provenance && e_num == o.e_num &&
         e_den == o.e_den && betti == o.betti && hodge == o.hodge;
}

Record higgs_record(const HiggsReport& h) {
  Record r;
  r.space = fmt::format("higgs{}", h.rank);
  r.genus = h.genus;
  r.rank = {h.rank};
  r.degree = {h.degree};
  r.dimension = h.dim;
  r.prefactor_convention = h.prefactor_convention;
  r.provenance = h.provenance;
  r.e_num = h.e_poly;
  r.betti = h.betti;
  r.hodge = h.hodge;
  return r;
}

Record chain_record(int genus, const std::vector<int>& rank, const std::vector<std::int64_t>& degree,
                    std::int64_t sigma_offset, const MotiveValue& value) {
  Record r;
  r.space = "chain";
  r.genus = genus;
  r.rank = rank;
  r.degree = degree;
  r.sigma_offset = sigma_offset;
  r.provenance = fmt::format("semistable chain class, sigma = 2g-2{:+}+eps", sigma_offset);
  r.e_num = value.num();
  r.e_den = value.den();
  return r;
}

std::optional<OutputFormat> parse_format(std::string_view s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "latex") return OutputFormat::Latex;
  if (s == "text") return OutputFormat::Text;
  return std::nullopt;
}

std::string to_json(const std::vector<Record>& records) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (i) out += ",\n";
    json_record(out, records[i]);
  }
  out += records.empty() ? "]\n" : "\n]\n";
  return out;
}

std::string to_csv(const std::vector<Record>& records) {
  std::string out = "space,genus,rank,degree,kind,p,q,k,value\n";
  for (const auto& r : records) {
    const std::string head = fmt::format("{},{},{},{}", r.space, r.genus, rank_label(r), degree_label(r));
    for (const auto& [e, c] : r.e_num.terms()) out += fmt::format("{},e,{},{},,{}\n", head, e.u, e.v, dec(c));
    for (const auto& f : r.e_den) out += fmt::format("{},den,{},{},,{}\n", head, f.a, f.b, f.mult);
    for (std::size_t k = 0; k < r.betti.size(); ++k) out += fmt::format("{},betti,,,{},{}\n", head, k, dec(r.betti[k]));
    for (const auto& h : r.hodge) out += fmt::format("{},hodge,{},{},{},{}\n", head, h.p, h.q, h.k, dec(h.h));
  }
  return out;
}

std::string to_latex(const std::vector<Record>& records) {
  std::string out;
  for (const auto& r : records) {
    if (r.is_chain())
      throw MotiveError(ErrorKind::InvalidArgument, "the LaTeX emitter renders Poincare polynomials of Higgs spaces only");
    out += fmt::format("% {} genus {}, prefactor {}\n", r.space, r.genus, r.prefactor_convention);
    out += fmt::format("\\[ P({}, t) = {} \\]\n", latex_name(r), latex_poincare(r.betti));
  }
  return out;
}

std::string to_text(const std::vector<Record>& records) {
  std::string out;
  for (const auto& r : records) {
    out += fmt::format("{} genus={} rank={} degree={}\n", r.space, r.genus, rank_label(r), degree_label(r));
    if (r.is_chain()) out += fmt::format("  sigma = 2g-2{:+}+eps\n", r.sigma_offset);
    if (r.dimension) out += fmt::format("  dimension: {}\n", *r.dimension);
    if (!r.prefactor_convention.empty()) out += fmt::format("  prefactor: {}\n", r.prefactor_convention);
    out += fmt::format("  provenance: {}\n", r.provenance);
    if (!r.betti.empty()) out += fmt::format("  betti: {}\n", betti_list(r.betti));
    out += fmt::format("  E: {}\n", MotiveValue::fraction(r.e_num, r.e_den).to_string());
  }
  return out;
}

std::string render(const std::vector<Record>& records, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json:
      return to_json(records);
    case OutputFormat::Csv:
      return to_csv(records);
    case OutputFormat::Latex:
      return to_latex(records);
    case OutputFormat::Text:
      return to_text(records);
  }
  return {};
}

std::string record_to_cache(const Record& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["version"] = kCacheVersion;
  j["space"] = r.space;
  j["genus"] = r.genus;
  j["rank"] = r.rank;
  j["degree"] = r.degree;
  j["sigma_offset"] = r.sigma_offset;
  j["dimension"] = r.dimension ? ordered_json(*r.dimension) : ordered_json(nullptr);
  j["prefactor_convention"] = r.prefactor_convention;
  j["provenance"] = r.provenance;
  auto& terms = j["e_num"] = ordered_json::array();
  for (const auto& [e, c] : r.e_num.terms()) terms.push_back({e.u, e.v, dec(c)});
  auto& den = j["e_den"] = ordered_json::array();
  for (const auto& f : r.e_den) den.push_back({f.a, f.b, f.mult});
  auto& betti = j["betti"] = ordered_json::array();
  for (const auto& b : r.betti) betti.push_back(dec(b));
  auto& hodge = j["hodge"] = ordered_json::array();
  for (const auto& h : r.hodge) hodge.push_back({h.p, h.q, h.k, dec(h.h)});
  return j.dump();
}

Record record_from_cache(const std::string& text) {
  using nlohmann::json;
  try {
    const json j = json::parse(text);
    if (j.at("version").get<int>() != kCacheVersion)
      throw MotiveError(ErrorKind::InvalidArgument, "cache entry has another version");
    Record r;
    r.space = j.at("space").get<std::string>();
    r.genus = j.at("genus").get<int>();
    r.rank = j.at("rank").get<std::vector<int>>();
    r.degree = j.at("degree").get<std::vector<std::int64_t>>();
    r.sigma_offset = j.at("sigma_offset").get<std::int64_t>();
    if (!j.at("dimension").is_null()) r.dimension = j.at("dimension").get<std::int64_t>();
    r.prefactor_convention = j.at("prefactor_convention").get<std::string>();
    r.provenance = j.at("provenance").get<std::string>();
    std::vector<BivariateLaurent::Term> terms;
    for (const auto& t : j.at("e_num"))
      terms.emplace_back(Exponent{t.at(0).get<std::int64_t>(), t.at(1).get<std::int64_t>()},
                         Integer(t.at(2).get<std::string>()));
    r.e_num = BivariateLaurent::from_terms(std::move(terms));
    for (const auto& f : j.at("e_den"))
      r.e_den.push_back({f.at(0).get<std::int64_t>(), f.at(1).get<std::int64_t>(), f.at(2).get<int>()});
    for (const auto& b : j.at("betti")) r.betti.emplace_back(b.get<std::string>());
    for (const auto& h : j.at("hodge"))
      r.hodge.push_back({h.at(0).get<std::int64_t>(), h.at(1).get<std::int64_t>(), h.at(2).get<std::int64_t>(),
                         Integer(h.at(3).get<std::string>())});
    return r;
  } catch (const json::exception& e) {
    throw MotiveError(ErrorKind::InvalidArgument, std::string("malformed cache entry: ") + e.what());
  }
}

}  // namespace motive
