#pragma once

#include "motive/report_io.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace motive {

/// Exit codes of the command line driver.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitInvalidConfig = 2, kExitInvariant = 3 };

/// One batch job: a space and a genus range, plus chain parameters when space is "chain".
struct JobConfig {
  std::string space;
  int genus_lo = 2;
  int genus_hi = 2;
  std::vector<int> rank;
  std::vector<std::int64_t> deg;
  std::int64_t sigma_offset = 0;
  OutputFormat format = OutputFormat::Json;
  std::string out;
  std::string cache_dir;
  int jobs = 1;

  /// Throws InvalidArgument naming the offending field.
  void validate() const;
};

/// Parses "g" or "a..b".
std::optional<std::pair<int, int>> parse_genus_range(const std::string& s);

/// Computes one record per genus, through the cache when cache_dir is set. Records come back in
/// genus order whatever the number of jobs. MotiveError propagates unchanged.
std::vector<Record> compute_records(const JobConfig& cfg);

/// Cache file name of one work item.
std::string cache_key(const JobConfig& cfg, int genus);

/// The motive_forge command line: subcommands compute and verify. Writes results to out (or the
/// --out file) and diagnostics to err; returns an ExitCode.
int run_forge(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace motive
