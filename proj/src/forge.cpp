#include "motive/forge.hpp"

#include "motive/chains.hpp"
#include "motive/errors.hpp"
#include "motive/verify.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

namespace motive {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kSpaces = {"higgs2", "higgs3", "higgs4", "chain"};

int space_rank(const std::string& space) { return space == "higgs2" ? 2 : space == "higgs3" ? 3 : 4; }

HiggsSpace space_of(const std::string& space) {
  return space == "higgs2" ? HiggsSpace::M2 : space == "higgs3" ? HiggsSpace::M3 : HiggsSpace::M4;
}

Record compute_one(const JobConfig& cfg, int g) {
  CurveContext ctx(g);
  if (cfg.space == "chain")
    return chain_record(g, cfg.rank, cfg.deg, cfg.sigma_offset,
                        chain_ss(ctx, cfg.rank, cfg.deg, higgs_sigma(g, static_cast<long>(cfg.sigma_offset))));
  return higgs_record(report(ctx, space_of(cfg.space)));
}

std::optional<Record> cache_read(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return record_from_cache(buf.str());
  } catch (const MotiveError&) {
    return std::nullopt;  // stale or damaged entries are recomputed
  }
}

/// Writes through a temporary file and a rename so that readers never see partial entries.
void cache_write(const fs::path& file, const Record& r) {
  const fs::path tmp = file.string() + fmt::format(".tmp{}", std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << record_to_cache(r);
    if (!out) return;  // an unwritable cache only costs recomputation
  }
  std::error_code ec;
  fs::rename(tmp, file, ec);
  if (ec) fs::remove(tmp, ec);
}

Record compute_cached(const JobConfig& cfg, int g) {
  if (cfg.cache_dir.empty()) return compute_one(cfg, g);
  const fs::path file = fs::path(cfg.cache_dir) / cache_key(cfg, g);
  if (auto hit = cache_read(file)) return *hit;
  Record r = compute_one(cfg, g);
  std::error_code ec;
  fs::create_directories(cfg.cache_dir, ec);
  cache_write(file, r);
  return r;
}

int exit_code_for(const MotiveError& e) { return is_invariant_violation(e.kind()) ? kExitInvariant : kExitInvalidConfig; }

int cmd_compute(JobConfig cfg, const std::string& genus, const std::string& format, std::ostream& out,
                std::ostream& err) {
  const auto range = parse_genus_range(genus);
  if (!range) {
    err << "invalid config: --genus expects g or a..b, got '" << genus << "'\n";
    return kExitInvalidConfig;
  }
  std::tie(cfg.genus_lo, cfg.genus_hi) = *range;
  const auto fmt_choice = parse_format(format);
  if (!fmt_choice) {
    err << "invalid config: --format expects json, csv, latex or text, got '" << format << "'\n";
    return kExitInvalidConfig;
  }
  cfg.format = *fmt_choice;
  if (const char* env = std::getenv("MOTIVE_FORGE_CACHE"); env && *env) cfg.cache_dir = env;
  std::string text;
  try {
    cfg.validate();
    if (cfg.format == OutputFormat::Latex && cfg.space == "chain")
      throw MotiveError(ErrorKind::InvalidArgument, "--format latex renders Higgs spaces only");
    text = render(compute_records(cfg), cfg.format);
  } catch (const MotiveError& e) {
    const int code = exit_code_for(e);
    err << (code == kExitInvariant ? "internal invariant violation: " : "invalid config: ") << e.what() << "\n";
    return code;
  }
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
    f << text;
    if (!f) {
      err << "invalid config: cannot write '" << cfg.out << "'\n";
      return kExitInvalidConfig;
    }
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite, std::ostream& out, std::ostream& err) {
  std::vector<std::string> names = suite.empty() ? suite_names() : std::vector<std::string>{suite};
  bool all_ok = true;
  for (const auto& name : names) {
    std::vector<SuiteReport> reports;
    try {
      reports = run_suite(name);
    } catch (const MotiveError& e) {
      err << "invalid config: " << e.what() << "\n";
      return kExitInvalidConfig;
    }
    for (const auto& r : reports) {
      out << fmt::format("suite={} checks={} failures={} status={}{}\n", r.name, r.total, r.failures.size(),
                         r.passed() ? "pass" : "fail", r.note.empty() ? "" : " " + r.note);
      for (const auto& f : r.failures) out << "FAIL " << f << "\n";
      all_ok = all_ok && r.passed();
    }
  }
  return all_ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

void JobConfig::validate() const {
  auto bad = [](const std::string& what) { throw MotiveError(ErrorKind::InvalidArgument, what); };
  if (std::find(kSpaces.begin(), kSpaces.end(), space) == kSpaces.end())
    bad("--space must be one of higgs2, higgs3, higgs4, chain");
  if (genus_lo < 2 || genus_hi > 64 || genus_lo > genus_hi) bad("genus range must lie within [2, 64]");
  if (jobs < 1) bad("--jobs must be positive");
  if (space == "chain") {
    if (rank.empty() || deg.size() != rank.size()) bad("--rank and --deg must be given with equal lengths");
    int total = 0;
    for (int n : rank) {
      if (n < 0) bad("--rank entries must be nonnegative");
      total += n;
    }
    if (total < 1 || total > 4) bad("chain total rank must be between 1 and 4");
  } else {
    if (!rank.empty() && (rank.size() != 1 || rank[0] != space_rank(space))) bad("--rank does not match --space");
    if (!deg.empty() && (deg.size() != 1 || deg[0] != 1)) bad("Higgs spaces are computed in degree 1 only");
    if (sigma_offset != 0) bad("--sigma-offset applies to --space chain only");
  }
}

std::optional<std::pair<int, int>> parse_genus_range(const std::string& s) {
  auto to_int = [](const std::string& t) -> std::optional<int> {
    if (t.empty() || t.size() > 6 || t.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
    return std::stoi(t);
  };
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    auto g = to_int(s);
    if (!g) return std::nullopt;
    return std::pair{*g, *g};
  }
  auto a = to_int(s.substr(0, dots)), b = to_int(s.substr(dots + 2));
  if (!a || !b) return std::nullopt;
  return std::pair{*a, *b};
}

std::string cache_key(const JobConfig& cfg, int genus) {
  if (cfg.space != "chain") return fmt::format("{}-g{}.json", cfg.space, genus);
  auto dash = [](const auto& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "_" : "") + std::to_string(xs[i]);
    return s;
  };
  return fmt::format("chain-g{}-r{}-d{}-s{}.json", genus, dash(cfg.rank), dash(cfg.deg), cfg.sigma_offset);
}

std::vector<Record> compute_records(const JobConfig& cfg) {
  cfg.validate();
  const int n = cfg.genus_hi - cfg.genus_lo + 1;
  std::vector<std::optional<Record>> results(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        results[static_cast<std::size_t>(i)] = compute_cached(cfg, cfg.genus_lo + i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  const int threads = std::min(cfg.jobs, n);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  // The lowest failing genus decides the error, independent of scheduling.
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Record> out;
  out.reserve(results.size());
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

int run_forge(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact E-polynomials of Higgs moduli spaces and chain stacks"};
  app.require_subcommand(1);

  JobConfig cfg;
  std::string genus = "2", format = "json", rank, deg;
  auto* compute = app.add_subcommand("compute", "Compute classes over a genus range");
  compute->add_option("--space", cfg.space, "higgs2, higgs3, higgs4 or chain")->required();
  compute->add_option("--rank", cfg.rank, "Chain rank vector, e.g. 2,1")->delimiter(',');
  compute->add_option("--deg", cfg.deg, "Chain degree vector, e.g. 5,0")->delimiter(',');
  compute->add_option("--sigma-offset", cfg.sigma_offset, "Integer added to 2g-2 before eps");
  compute->add_option("--genus", genus, "Genus g or range a..b");
  compute->add_option("--format", format, "json, csv, latex or text");
  compute->add_option("--out", cfg.out, "Output file (default stdout)");
  compute->add_option("--cache-dir", cfg.cache_dir, "Result cache directory; MOTIVE_FORGE_CACHE overrides");
  compute->add_option("--jobs", cfg.jobs, "Parallel work items");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", suite, "ring, curve, chains, dualpath or higgs (default all)");

  std::vector<const char*> argv = {"motive_forge"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    // Help requests exit 0; every other parse failure is a configuration error.
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInvalidConfig;
  }
  if (compute->parsed()) return cmd_compute(cfg, genus, format, out, err);
  return cmd_verify(suite, out, err);
}

}  // namespace motive
