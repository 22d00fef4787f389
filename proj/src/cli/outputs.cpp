#include "dqnlab/cli/outputs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace dqnlab::cli {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string spec_hash(const RunConfig& run, const agents::AgentSpec& spec) {
  const std::string key = "env=" + run.env + "\nstep_cap=" + std::to_string(run.step_cap) +
                          "\nepisodes=" + std::to_string(run.episodes) + "\n" + spec.canonical();
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(key)));
  return buf;
}

double stability_score(std::span<const double> curve) {
  if (curve.empty()) return 0.0;
  auto drop = [](double peak, double trough) {
    const double norm = peak == 0.0 ? 1.0 : std::abs(peak);
    return (peak - trough) / norm;
  };
  double peak = curve[0];
  double trough = 0.0;
  bool falling = false;
  double total = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    const double v = curve[i];
    if (v >= peak) {
      if (falling) total += drop(peak, trough);
      falling = false;
      peak = v;
    } else if (!falling) {
      falling = true;
      trough = v;
    } else {
      trough = std::min(trough, v);
    }
  }
  if (falling) total += drop(peak, trough);
  return -total;
}

double stability_score(const agents::RunRecord& record) {
  if (record.episodes.size() < static_cast<std::size_t>(agents::kMovingAverageWindow)) {
    throw std::invalid_argument("stability score needs at least 100 episodes, got " +
                                std::to_string(record.episodes.size()));
  }
  std::vector<double> ma;
  ma.reserve(record.episodes.size());
  for (const auto& e : record.episodes) ma.push_back(e.moving_average);
  return stability_score(ma);
}

std::string run_file_name(const RunIdentity& id) {
  return id.label + "__" + std::string(agents::to_string(id.algorithm)) + "__seed" +
         std::to_string(id.seed) + ".csv";
}

namespace {

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

std::string run_csv(const RunIdentity& id, const agents::RunRecord& record) {
  std::string o;
  o += "# label=" + id.label + "\n";
  o += "# env=" + id.env + "\n";
  o += "# algorithm=" + std::string(agents::to_string(id.algorithm)) + "\n";
  o += "# seed=" + std::to_string(id.seed) + "\n";
  o += "# spec_hash=" + id.spec_hash + "\n";
  o += std::string("# diverged=") + (record.diverged ? "true" : "false") + "\n";
  if (record.diverged) o += "# diagnostic=" + one_line(record.diagnostic) + "\n";
  o += "episode,return,moving_average,mean_loss,updates,steps,epsilon,primary_sync,secondary_sync\n";
  for (const auto& e : record.episodes) {
    o += std::to_string(e.episode) + "," + format_double(e.episode_return) + "," +
         format_double(e.moving_average) + "," + format_double(e.mean_loss) + "," +
         std::to_string(e.updates) + "," + std::to_string(e.steps) + "," +
         format_double(e.epsilon) + "," + (e.primary_sync ? "1" : "0") + "," +
         (e.secondary_sync ? "1" : "0") + "\n";
  }
  return o;
}

SummaryRow summarize_run_csv(std::string_view text) {
  SummaryRow row;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header_seen = false;
  std::vector<double> ma;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const auto key = line.substr(2, eq - 2);
      const auto value = line.substr(eq + 1);
      if (key == "label") row.label = value;
      else if (key == "algorithm") row.algorithm = value;
      else if (key == "seed") row.seed = std::stoull(value);
      else if (key == "spec_hash") row.spec_hash = value;
      else if (key == "diverged") row.diverged = value == "true";
      continue;
    }
    if (!header_seen) {
      if (line.rfind("episode,return,moving_average", 0) != 0) {
        throw std::runtime_error("run CSV has an unexpected header: " + line);
      }
      header_seen = true;
      continue;
    }
    // moving_average is the third column.
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    const auto c3 = c2 == std::string::npos ? c2 : line.find(',', c2 + 1);
    if (c3 == std::string::npos) throw std::runtime_error("short run CSV row: " + line);
    ma.push_back(std::stod(line.substr(c2 + 1, c3 - c2 - 1)));
  }
  if (!header_seen) throw std::runtime_error("run CSV has no header row");
  row.episodes = static_cast<long>(ma.size());
  if (!ma.empty()) {
    row.final_moving_average = ma.back();
    row.best_moving_average = *std::max_element(ma.begin(), ma.end());
  }
  if (ma.size() >= static_cast<std::size_t>(agents::kMovingAverageWindow)) {
    row.stability = stability_score(ma);
  }
  return row;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string o =
      "label,algorithm,seed,episodes,final_moving_average,best_moving_average,stability_score,"
      "diverged,spec_hash\n";
  for (const auto& r : rows) {
    o += r.label + "," + r.algorithm + "," + std::to_string(r.seed) + "," +
         std::to_string(r.episodes) + "," + format_double(r.final_moving_average) + "," +
         format_double(r.best_moving_average) + "," +
         (r.stability ? format_double(*r.stability) : std::string()) + "," +
         (r.diverged ? "true" : "false") + "," + r.spec_hash + "\n";
  }
  return o;
}

std::string timings_csv(const std::vector<TimingRow>& rows) {
  std::string o = "label,algorithm,seed,wall_seconds\n";
  for (const auto& r : rows) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", r.wall_seconds);
    o += r.label + "," + r.algorithm + "," + std::to_string(r.seed) + "," + buf + "\n";
  }
  return o;
}

namespace {

std::string theory_header(const theory::SettingReport& r, const TheoryConfig& c) {
  std::string o;
  o += "# setting=" + r.setting.label() + "\n";
  o += "# grid=" + std::to_string(c.grid_points) + " uniform points on [-6, 6]\n";
  o += "# sample_rule=" + theory::sample_rule_description() + "\n";
  o += "# variants=" + std::to_string(c.variants) + " variant_step=" + format_double(c.variant_step) +
       " reference_index=" + std::to_string(c.reference_index) + "\n";
  o += "# seed=none (construction is deterministic)\n";
  return o;
}

}  // namespace

std::string theory_curves_csv(const theory::SettingReport& r, const TheoryConfig& c) {
  std::string o = theory_header(r, c);
  o += "state,truth";
  for (int a = 0; a < r.estimates.rows(); ++a) o += ",q" + std::to_string(a);
  o += ",max_estimate,double_estimate\n";
  for (Eigen::Index g = 0; g < r.truth.size(); ++g) {
    o += format_double(r.setting.grid[static_cast<std::size_t>(g)]) + "," + format_double(r.truth[g]);
    for (Eigen::Index a = 0; a < r.estimates.rows(); ++a) o += "," + format_double(r.estimates(a, g));
    o += "," + format_double(r.max_estimate[g]) + "," + format_double(r.double_estimate[g]) + "\n";
  }
  return o;
}

std::string theory_matrix_csv(const theory::SettingReport& r, const TheoryConfig& c) {
  const auto& m = r.moving_target;
  std::string o = theory_header(r, c);
  o += "# reference_error=" + format_double(m.reference_error) + "\n";
  o += "i";
  for (Eigen::Index j = 0; j < m.pairwise.cols(); ++j) o += ",j" + std::to_string(j);
  o += "\n";
  for (Eigen::Index i = 0; i < m.pairwise.rows(); ++i) {
    o += std::to_string(i);
    for (Eigen::Index j = 0; j < m.pairwise.cols(); ++j) o += "," + format_double(m.pairwise(i, j));
    o += "\n";
  }
  return o;
}

std::string theory_sse_csv(const std::vector<theory::SettingReport>& reports,
                           const TheoryConfig& c) {
  std::string o;
  o += "# grid=" + std::to_string(c.grid_points) + " uniform points on [-6, 6]\n";
  o += "# sample_rule=" + theory::sample_rule_description() + "\n";
  o += "# variants=" + std::to_string(c.variants) + " variant_step=" + format_double(c.variant_step) +
       " reference_index=" + std::to_string(c.reference_index) + "\n";
  o += "# seed=none (construction is deterministic)\n";
  o += "setting,function,degree,double_sse,max_sse,max_mean_bias,double_mean_bias,"
       "positive_fraction,reference_error,max_pairwise_error,median_pairwise_error\n";
  for (const auto& r : reports) {
    const double max_off = theory::max_off_diagonal(r.moving_target.pairwise);
    const double median = theory::median_off_diagonal(r.moving_target.pairwise);
    o += r.setting.label() + "," + std::string(r.setting.truth.name()) + "," +
         std::to_string(r.setting.degree) + "," + format_double(r.double_sse) + "," +
         format_double(r.max_sse) + "," + format_double(r.max_mean_bias) + "," +
         format_double(r.double_mean_bias) + "," + format_double(r.positive_fraction) + "," +
         format_double(r.moving_target.reference_error) + "," + format_double(max_off) + "," +
         format_double(median) + "\n";
  }
  return o;
}

}  // namespace dqnlab::cli
