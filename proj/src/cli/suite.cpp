#include "dqnlab/cli/suite.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "dqnlab/env/cartpole.hpp"
#include "dqnlab/env/toy_mdp.hpp"

namespace dqnlab::cli {

namespace fs = std::filesystem;

void write_text_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::unique_ptr<env::Environment> make_environment(const RunConfig& run, double gamma) {
  if (run.env == "cartpole") return std::make_unique<env::CartPoleEnv>(run.step_cap);
  if (run.env == "toy") return std::make_unique<env::ToyMdpEnv>(env::overestimation_mdp(gamma));
  throw ConfigError("unknown env '" + run.env + "'", "env");
}

namespace {

struct Job {
  RunConfig run;
  agents::AgentSpec spec;
  RunIdentity id;
};

std::vector<Job> expand(const SuiteConfig& config, const SuiteOptions& options) {
  std::vector<Job> jobs;
  for (RunConfig run : config.runs) {
    if (options.seeds) run.seeds = *options.seeds;
    if (options.algorithms) run.algorithms = *options.algorithms;
    if (options.episodes) run.episodes = *options.episodes;
    for (auto algo : run.algorithms) {
      for (auto seed : run.seeds) {
        Job j{run, run.spec, {}};
        j.spec.algorithm = algo;
        j.spec.seed = seed;
        j.spec.validate();
        j.id = {run.label, run.env, algo, seed, spec_hash(run, j.spec)};
        jobs.push_back(std::move(j));
      }
    }
  }
  return jobs;
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

SuiteResult run_suite(const SuiteConfig& config, const SuiteOptions& options) {
  const auto jobs = expand(config, options);
  SuiteResult result;
  result.runs = static_cast<int>(jobs.size());
  if (jobs.empty()) {
    if (options.log) *options.log << "warning: no runs requested (empty seed or algorithm list)\n";
    return result;
  }
  const fs::path runs_dir = options.out_dir / "runs";
  fs::create_directories(runs_dir);

  std::vector<TimingRow> timings(jobs.size());
  std::vector<SummaryRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  std::exception_ptr failure;

  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        const auto& job = jobs[i];
        auto environment = make_environment(job.run, job.spec.gamma);
        const auto record = agents::train_run(job.spec, *environment, job.run.episodes);
        const auto text = run_csv(job.id, record);
        write_text_file(runs_dir / run_file_name(job.id), text);
        rows[i] = summarize_run_csv(text);
        timings[i] = {job.id.label, std::string(agents::to_string(job.id.algorithm)), job.id.seed,
                      record.wall_seconds};
        if (options.log) {
          std::lock_guard lock(log_mutex);
          *options.log << run_file_name(job.id) << ": final MA "
                       << format_double(rows[i].final_moving_average)
                       << (record.diverged ? " (diverged: " + record.diagnostic + ")" : "") << "\n";
        }
      } catch (...) {
        std::lock_guard lock(log_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const int threads = std::clamp<int>(options.jobs, 1, static_cast<int>(jobs.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  write_text_file(options.out_dir / "summary.csv", summary_csv(rows));
  write_text_file(options.out_dir / "timings.csv", timings_csv(timings));
  result.summary = std::move(rows);
  for (const auto& r : result.summary) result.diverged += r.diverged ? 1 : 0;
  return result;
}

std::vector<SummaryRow> summarize_directory(const fs::path& dir) {
  const fs::path runs_dir = dir / "runs";
  std::vector<fs::path> files;
  if (fs::is_directory(runs_dir)) {
    for (const auto& entry : fs::directory_iterator(runs_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<SummaryRow> rows;
  for (const auto& f : files) rows.push_back(summarize_run_csv(read_text_file(f)));
  write_text_file(dir / "summary.csv", summary_csv(rows));
  return rows;
}

std::vector<theory::SettingReport> run_theory(const TheoryConfig& config, const fs::path& out_dir) {
  const fs::path dir = out_dir / "theory";
  std::vector<theory::SettingReport> reports;
  for (const auto& setting : theory::canonical_settings(config.grid_points)) {
    reports.push_back(theory::run_setting(setting, config.reference_index, config.variants,
                                          config.variant_step));
    const auto& r = reports.back();
    write_text_file(dir / ("curves_" + setting.label() + ".csv"), theory_curves_csv(r, config));
    write_text_file(dir / ("moving_target_" + setting.label() + ".csv"), theory_matrix_csv(r, config));
  }
  write_text_file(dir / "sse_summary.csv", theory_sse_csv(reports, config));
  return reports;
}

}  // namespace dqnlab::cli
