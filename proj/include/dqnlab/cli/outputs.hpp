#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dqnlab/agents/trainer.hpp"
#include "dqnlab/cli/config.hpp"
#include "dqnlab/theory/theory.hpp"

namespace dqnlab::cli {

/// Shortest round-trip decimal rendering ("%.17g"); identical doubles always
/// give identical text.
std::string format_double(double v);

std::uint64_t fnv1a64(std::string_view bytes);

/// 16 hex digits identifying everything that determines a run's numbers.
std::string spec_hash(const RunConfig& run, const agents::AgentSpec& spec);

/// Negated sum over drawdowns of (peak - trough) / |peak| along the curve. A
/// drawdown starts when the curve drops below its running maximum and ends
/// when it regains it (or at the end). A zero peak normalises by 1.
double stability_score(std::span<const double> moving_average);

/// Same score on the record's moving-average curve; throws
/// std::invalid_argument for records shorter than 100 episodes.
double stability_score(const agents::RunRecord& record);

struct RunIdentity {
  std::string label;
  std::string env;
  agents::Algorithm algorithm = agents::Algorithm::kDdqn;
  std::uint64_t seed = 0;
  std::string spec_hash;
};

std::string run_file_name(const RunIdentity& id);

/// Per-episode learning curve. Wall time is deliberately absent.
std::string run_csv(const RunIdentity& id, const agents::RunRecord& record);

struct SummaryRow {
  std::string label;
  std::string algorithm;
  std::uint64_t seed = 0;
  long episodes = 0;
  double final_moving_average = 0.0;
  double best_moving_average = 0.0;
  std::optional<double> stability;  // absent below 100 episodes
  bool diverged = false;
  std::string spec_hash;
};

/// Rebuilds a summary row from run_csv() output. Throws std::runtime_error on
/// malformed input.
SummaryRow summarize_run_csv(std::string_view text);

std::string summary_csv(const std::vector<SummaryRow>& rows);

struct TimingRow {
  std::string label;
  std::string algorithm;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
};
std::string timings_csv(const std::vector<TimingRow>& rows);

std::string theory_curves_csv(const theory::SettingReport& report, const TheoryConfig& config);
std::string theory_matrix_csv(const theory::SettingReport& report, const TheoryConfig& config);
std::string theory_sse_csv(const std::vector<theory::SettingReport>& reports,
                           const TheoryConfig& config);

}  // namespace dqnlab::cli
