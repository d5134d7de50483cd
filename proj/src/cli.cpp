// Copyright 2026 The slowshot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "slowshot/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "slowshot/errors.hpp"

namespace slowshot {
namespace {

std::string trim(std::string s) {
  s.erase(0, s.find_first_not_of(" \t\r"));
  s.erase(s.find_last_not_of(" \t\r") + 1);
  return s;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::logic_error&) {
    throw ConfigError("bad numeric value for " + key + ": '" + v + "'");
  }
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d < 0 || d != std::floor(d) || d > 1.8e19) {
    throw ConfigError(key + " must be a nonnegative integer");
  }
  return static_cast<std::uint64_t>(d);
}

}  // namespace

std::vector<double> parse_u_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    grid.push_back(to_double("u", item));
  }
  if (grid.empty()) throw ConfigError("empty u grid");
  return grid;
}

std::string apply_config_text(ExperimentConfig& cfg, const std::string& text) {
  std::string experiment;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: expected key=value, got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "experiment") {
      experiment = val;
    } else if (key == "tau") {
      cfg.tau = to_double(key, val);
    } else if (key == "replicas") {
      cfg.replicas = to_u64(key, val);
    } else if (key == "seed") {
      cfg.seed = to_u64(key, val);
    } else if (key == "u") {
      cfg.u_grid = parse_u_grid(val);
    } else if (key == "alpha") {
      cfg.alpha = to_double(key, val);
    } else if (key == "L") {
      cfg.L_spec = val;
    } else if (key == "out") {
      cfg.out_dir = val;
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(to_u64(key, val));
    } else if (key.rfind("tol.", 0) == 0) {
      cfg.tolerances[key.substr(4)] = to_double(key, val);
    } else if (key.rfind("param.", 0) == 0) {
      cfg.params[key.substr(6)] = to_double(key, val);
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  return experiment;
}

int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"slowshot: renewal shot noise and extremal process experiments"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List experiment names");
  auto* describe = app.add_subcommand("describe", "Describe one experiment");
  std::string describe_name;
  describe->add_option("name", describe_name, "Experiment name")->required();

  auto* run = app.add_subcommand("run", "Run one experiment");
  std::string experiment, config_path, L_spec, u_text, out_dir;
  double tau = 0, alpha = 0;
  std::uint64_t replicas = 0, seed = 0;
  int threads = 0;
  run->add_option("--experiment", experiment, "Experiment name");
  run->add_option("--config", config_path, "key=value config file");
  run->add_option("--tau", tau, "L-scale tau");
  run->add_option("--replicas", replicas, "Number of replicas");
  run->add_option("--seed", seed, "64-bit seed");
  run->add_option("--u", u_text, "Comma-separated increasing u grid");
  run->add_option("--alpha", alpha, "Shot shape index alpha");
  run->add_option("--L", L_spec, "logpow:<beta> | loglog | repr:<path>");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--threads", threads, "Worker threads (0 = all)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (*list) {
    for (const auto& n : experiment_names()) out << n << '\n';
    return kExitPass;
  }
  try {
    if (*describe) {
      out << describe_name << ": " << experiment_description(describe_name)
          << '\n';
      const ExperimentConfig d = default_config(describe_name);
      out << "  defaults: L=" << d.L_spec << " tau=" << d.tau
          << " replicas=" << d.replicas << " seed=" << d.seed << " u=";
      for (std::size_t i = 0; i < d.u_grid.size(); ++i) {
        out << (i ? "," : "") << d.u_grid[i];
      }
      out << " alpha=" << d.alpha << '\n';
      return kExitPass;
    }

    std::string file_text;
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw ConfigError("cannot open config " + config_path);
      std::stringstream buf;
      buf << f.rdbuf();
      file_text = buf.str();
    }
    // The experiment name decides the defaults; the flag beats the file.
    ExperimentConfig scratch;
    const std::string file_experiment = apply_config_text(scratch, file_text);
    const std::string name = run->count("--experiment") ? experiment
                                                         : file_experiment;
    if (name.empty()) throw ConfigError("--experiment is required");
    ExperimentConfig cfg = default_config(name);
    apply_config_text(cfg, file_text);
    if (run->count("--tau")) cfg.tau = tau;
    if (run->count("--replicas")) cfg.replicas = replicas;
    if (run->count("--seed")) cfg.seed = seed;
    if (run->count("--u")) cfg.u_grid = parse_u_grid(u_text);
    if (run->count("--alpha")) cfg.alpha = alpha;
    if (run->count("--L")) cfg.L_spec = L_spec;
    if (run->count("--out")) cfg.out_dir = out_dir;
    if (run->count("--threads")) cfg.threads = threads;
    if (cfg.out_dir.empty()) cfg.out_dir = "results/" + name;
    cfg.validate();

    const ExperimentReport report = run_experiment(cfg);
    write_artifacts(report, cfg.out_dir);
    for (const auto& t : report.tests) {
      out << (t.pass ? "PASS " : "FAIL ") << t.name
          << " statistic=" << t.result.statistic;
      if (t.result.p_value) out << " p=" << *t.result.p_value;
      out << " threshold=" << t.threshold << (t.mandatory ? "" : " (info)")
          << '\n';
    }
    const Verdict v = report.verdict();
    out << "verdict: "
        << (v == Verdict::kPass ? "pass" : v == Verdict::kDemo ? "demo" : "fail")
        << "  (" << report.wall_seconds << " s, report in " << cfg.out_dir
        << ")\n";
    return v == Verdict::kFail ? kExitFail : kExitPass;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ContractError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitFail;
  }
}

}  // namespace slowshot
