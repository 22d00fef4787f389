#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "dqnlab/cli/config.hpp"
#include "dqnlab/cli/outputs.hpp"
#include "dqnlab/env/environment.hpp"

namespace dqnlab::cli {

/// Command-line overrides applied to every run of a suite.
struct SuiteOptions {
  std::filesystem::path out_dir = "results";
  int jobs = 1;
  std::optional<std::vector<std::uint64_t>> seeds;
  std::optional<std::vector<agents::Algorithm>> algorithms;
  std::optional<long> episodes;
  std::ostream* log = nullptr;  // progress lines; null for silence
};

struct SuiteResult {
  std::vector<SummaryRow> summary;
  int runs = 0;
  int diverged = 0;
};

std::unique_ptr<env::Environment> make_environment(const RunConfig& run, double gamma);

/// Runs every (run block, algorithm, seed) combination, writes
/// <out>/runs/<label>__<ALGO>__seed<k>.csv, then <out>/summary.csv and
/// <out>/timings.csv. Runs are independent and may execute in parallel.
SuiteResult run_suite(const SuiteConfig& config, const SuiteOptions& options);

/// Summary rows for every run CSV in <dir>/runs (sorted by file name), also
/// written to <dir>/summary.csv.
std::vector<SummaryRow> summarize_directory(const std::filesystem::path& dir);

/// Writes <out>/theory/curves_<setting>.csv, moving_target_<setting>.csv and
/// sse_summary.csv.
std::vector<theory::SettingReport> run_theory(const TheoryConfig& config,
                                              const std::filesystem::path& out_dir);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace dqnlab::cli
