#include "dqnlab/cli/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dqnlab::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto p = s.find(sep);
    out.push_back(trim(s.substr(0, p)));
    if (p == std::string_view::npos) break;
    s.remove_prefix(p + 1);
  }
  return out;
}

template <class T>
T parse_number(std::string_view key, std::string_view v) {
  T out{};
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("invalid value '" + std::string(v) + "' for key '" + std::string(key) + "'",
                      std::string(key));
  }
  return out;
}

double parse_double(std::string_view key, std::string_view v) {
  // from_chars for double is missing from older libstdc++; strtod is fine here.
  std::string s(v);
  char* end = nullptr;
  const double out = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ConfigError("invalid value '" + s + "' for key '" + std::string(key) + "'",
                      std::string(key));
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("invalid boolean '" + std::string(v) + "' for key '" + std::string(key) + "'",
                    std::string(key));
}

template <class Parse>
auto wrap(std::string_view key, Parse&& parse) {
  try {
    return parse();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("key '" + std::string(key) + "': " + e.what(), std::string(key));
  }
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join_algorithms(const std::vector<agents::Algorithm>& algos) {
  std::string s;
  for (std::size_t i = 0; i < algos.size(); ++i) {
    if (i) s += ", ";
    s += agents::to_string(algos[i]);
  }
  return s;
}

std::string join_seeds(const std::vector<std::uint64_t>& seeds) {
  std::string s;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(seeds[i]);
  }
  return s;
}

void apply_theory_key(TheoryConfig& t, std::string_view key, std::string_view value) {
  if (key == "grid_points") t.grid_points = parse_number<int>(key, value);
  else if (key == "variants") t.variants = parse_number<int>(key, value);
  else if (key == "variant_step") t.variant_step = parse_double(key, value);
  else if (key == "reference_index") t.reference_index = parse_number<int>(key, value);
  else throw ConfigError("unknown key '" + std::string(key) + "' in [theory]", std::string(key));
}

void check_theory(const TheoryConfig& t) {
  if (t.grid_points < 2) throw ConfigError("grid_points must be at least 2", "grid_points");
  if (t.variants < 1) throw ConfigError("variants must be at least 1", "variants");
  if (t.reference_index < 0 || t.reference_index >= t.variants) {
    throw ConfigError("reference_index must lie in [0, variants)", "reference_index");
  }
}

void check_run(const RunConfig& run) {
  if (run.env != "cartpole" && run.env != "toy") {
    throw ConfigError("unknown env '" + run.env + "' in run '" + run.label + "'", "env");
  }
  if (run.episodes < 0) throw ConfigError("episodes must be non-negative", "episodes");
  if (run.step_cap < 1) throw ConfigError("step_cap must be positive", "step_cap");
  if (run.algorithms.empty()) throw ConfigError("algorithms must not be empty", "algorithms");
  for (auto algo : run.algorithms) {
    auto spec = run.spec;
    spec.algorithm = algo;
    try {
      spec.validate();
    } catch (const std::invalid_argument& e) {
      const std::string msg = e.what();
      throw ConfigError("run '" + run.label + "' (" + std::string(agents::to_string(algo)) +
                            "): " + msg,
                        msg.substr(0, msg.find(':')));
    }
  }
}

}  // namespace

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  if (trim(text).empty()) return seeds;
  for (auto item : split(text, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      seeds.push_back(parse_number<std::uint64_t>("seeds", item));
      continue;
    }
    const auto lo = parse_number<std::uint64_t>("seeds", trim(item.substr(0, dots)));
    const auto hi = parse_number<std::uint64_t>("seeds", trim(item.substr(dots + 2)));
    if (hi < lo) throw ConfigError("empty seed range '" + std::string(item) + "'", "seeds");
    for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
  }
  return seeds;
}

std::vector<agents::Algorithm> parse_algorithm_list(std::string_view text) {
  std::vector<agents::Algorithm> out;
  for (auto item : split(text, ',')) {
    if (item.empty()) continue;
    out.push_back(wrap("algorithms", [&] { return agents::parse_algorithm(item); }));
  }
  return out;
}

RunConfig default_run_config() {
  RunConfig run;
  auto& s = run.spec;
  s.gamma = 0.99;
  s.epsilon = {1.0, 0.05, 0.99};
  s.learning_rate = 1e-3;
  s.optimizer.kind = approx::OptimizerKind::kAdam;
  s.sync_period = 10;
  s.batch_size = 64;
  s.replay_capacity = 100'000;
  s.min_replay = 1'000;
  s.network = agents::NetworkKind::kLinear;
  s.hidden_width = 64;
  s.train_every = 1;
  return run;
}

SuiteConfig default_suite_config() {
  SuiteConfig c;
  c.runs.push_back(default_run_config());
  return c;
}

void apply_run_key(RunConfig& run, std::string_view key, std::string_view value) {
  auto& s = run.spec;
  if (key == "env") run.env = std::string(value);
  else if (key == "step_cap") run.step_cap = parse_number<int>(key, value);
  else if (key == "episodes") run.episodes = parse_number<long>(key, value);
  else if (key == "algorithms") run.algorithms = parse_algorithm_list(value);
  else if (key == "seeds") run.seeds = parse_seed_list(value);
  else if (key == "gamma") s.gamma = parse_double(key, value);
  else if (key == "epsilon_start") s.epsilon.start = parse_double(key, value);
  else if (key == "epsilon_end") s.epsilon.end = parse_double(key, value);
  else if (key == "epsilon_decay") s.epsilon.decay = parse_double(key, value);
  else if (key == "learning_rate") s.learning_rate = parse_double(key, value);
  else if (key == "optimizer") s.optimizer.kind = wrap(key, [&] { return approx::parse_optimizer_kind(value); });
  else if (key == "momentum") s.optimizer.momentum = parse_double(key, value);
  else if (key == "max_grad_norm") s.optimizer.max_grad_norm = parse_double(key, value);
  else if (key == "sync_period") s.sync_period = parse_number<int>(key, value);
  else if (key == "sync_unit") s.sync_unit = wrap(key, [&] { return agents::parse_sync_unit(value); });
  else if (key == "secondary_phase") s.secondary_phase = wrap(key, [&] { return agents::parse_secondary_phase(value); });
  else if (key == "batch_size") s.batch_size = parse_number<int>(key, value);
  else if (key == "replay_capacity") s.replay_capacity = parse_number<std::size_t>(key, value);
  else if (key == "min_replay") s.min_replay = parse_number<std::size_t>(key, value);
  else if (key == "network") s.network = wrap(key, [&] { return agents::parse_network_kind(value); });
  else if (key == "hidden_width") s.hidden_width = parse_number<int>(key, value);
  else if (key == "train_every") s.train_every = parse_number<int>(key, value);
  else if (key == "online_selection") s.online_selection = parse_bool(key, value);
  else throw ConfigError("unknown key '" + std::string(key) + "'", std::string(key));
}

SuiteConfig parse_suite_config(std::string_view text) {
  enum class Section { kNone, kDefaults, kRun, kTheory };
  RunConfig defaults = default_run_config();
  // Each run keeps its own key/value list so it can be replayed over the
  // final defaults, whatever order the sections appear in.
  struct PendingRun {
    std::string label;
    std::vector<std::pair<std::string, std::string>> keys;
  };
  std::vector<PendingRun> pending;
  SuiteConfig out;
  Section section = Section::kNone;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    // Inline comments need whitespace before the marker.
    for (std::size_t i = 1; i < raw.size(); ++i) {
      if ((raw[i] == '#' || raw[i] == ';') && std::isspace(static_cast<unsigned char>(raw[i - 1]))) {
        raw.resize(i);
        break;
      }
    }
    auto line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    const auto where = " (line " + std::to_string(line_no) + ")";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("malformed section header" + where);
      const auto name = trim(line.substr(1, line.size() - 2));
      if (name == "defaults") {
        section = Section::kDefaults;
      } else if (name == "theory") {
        section = Section::kTheory;
      } else if (name.rfind("run", 0) == 0 && (name.size() == 3 || name[3] == ' ')) {
        const auto label = trim(name.substr(3));
        if (label.empty()) throw ConfigError("run section needs a label" + where);
        if (label.find_first_of("/\\ ") != std::string_view::npos || label.find("__") != std::string_view::npos) {
          throw ConfigError("run label '" + std::string(label) + "' may not contain '/', '\\', spaces or '__'" + where);
        }
        for (const auto& p : pending) {
          if (p.label == label) throw ConfigError("duplicate run label '" + std::string(label) + "'" + where);
        }
        pending.push_back({std::string(label), {}});
        section = Section::kRun;
      } else {
        throw ConfigError("unknown section [" + std::string(name) + "]" + where);
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected key = value" + where);
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    try {
      switch (section) {
        case Section::kNone:
          throw ConfigError("key '" + std::string(key) + "' outside any section", std::string(key));
        case Section::kDefaults: apply_run_key(defaults, key, value); break;
        case Section::kTheory: apply_theory_key(out.theory, key, value); break;
        case Section::kRun: {
          RunConfig probe = defaults;  // reject bad keys at their own line
          apply_run_key(probe, key, value);
          pending.back().keys.emplace_back(key, value);
          break;
        }
      }
    } catch (const ConfigError& e) {
      throw ConfigError(e.what() + where, e.key());
    }
  }

  if (pending.empty()) {
    out.runs.push_back(defaults);
  } else {
    for (const auto& p : pending) {
      RunConfig run = defaults;
      run.label = p.label;
      for (const auto& [k, v] : p.keys) apply_run_key(run, k, v);
      out.runs.push_back(std::move(run));
    }
  }
  for (const auto& run : out.runs) check_run(run);
  check_theory(out.theory);
  return out;
}

SuiteConfig load_suite_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_suite_config(ss.str());
}

std::string render_defaults() {
  const auto run = default_run_config();
  const auto& s = run.spec;
  const TheoryConfig t;
  std::string o = "[defaults]\n";
  auto kv = [&o](std::string_view k, const std::string& v) {
    o.append(k).append(" = ").append(v).append("\n");
  };
  kv("env", run.env);
  kv("step_cap", std::to_string(run.step_cap));
  kv("episodes", std::to_string(run.episodes));
  kv("algorithms", join_algorithms(run.algorithms));
  kv("seeds", join_seeds(run.seeds));
  kv("gamma", num(s.gamma));
  kv("epsilon_start", num(s.epsilon.start));
  kv("epsilon_end", num(s.epsilon.end));
  kv("epsilon_decay", num(s.epsilon.decay));
  kv("learning_rate", num(s.learning_rate));
  kv("optimizer", std::string(approx::to_string(s.optimizer.kind)));
  kv("momentum", num(s.optimizer.momentum));
  kv("max_grad_norm", num(s.optimizer.max_grad_norm));
  kv("sync_period", std::to_string(s.sync_period));
  kv("sync_unit", std::string(agents::to_string(s.sync_unit)));
  kv("secondary_phase", std::string(agents::to_string(s.secondary_phase)));
  kv("batch_size", std::to_string(s.batch_size));
  kv("replay_capacity", std::to_string(s.replay_capacity));
  kv("min_replay", std::to_string(s.min_replay));
  kv("network", std::string(agents::to_string(s.network)));
  kv("hidden_width", std::to_string(s.hidden_width));
  kv("train_every", std::to_string(s.train_every));
  kv("online_selection", s.online_selection ? "true" : "false");
  o += "\n[theory]\n";
  kv("grid_points", std::to_string(t.grid_points));
  kv("variants", std::to_string(t.variants));
  kv("variant_step", num(t.variant_step));
  kv("reference_index", std::to_string(t.reference_index));
  return o;
}

}  // namespace dqnlab::cli
