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

#ifndef SLOWSHOT_EXPERIMENTS_HPP_
#define SLOWSHOT_EXPERIMENTS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "slowshot/kernels.hpp"
#include "slowshot/stats.hpp"

namespace slowshot {

struct ExperimentConfig {
  std::string name;
  std::string L_spec = "logpow:1";
  double alpha = 1.0;
  double tau = 1e4;
  std::vector<double> u_grid = {0.5, 1.0, 2.0};
  std::size_t replicas = 10000;
  std::uint64_t seed = 42;
  // Per-test threshold overrides, keyed like the defaults in tolerance().
  std::map<std::string, double> tolerances;
  // Experiment-specific numeric knobs (e.g. "eps", "t_max", "floor").
  std::map<std::string, double> params;
  std::string out_dir;
  int threads = 0;
  Exec exec = Exec::kParallel;

  double tolerance(const std::string& key, double fallback) const;
  double param(const std::string& key, double fallback) const;
  // Throws ConfigError on violated invariants.
  void validate() const;
};

/// How a test's statistic is compared with its threshold.
enum class Criterion {
  kStatisticBelow,  // statistic < threshold
  kPValueAbove,     // p > threshold
  kZeroViolations,  // statistic == 0 (a count)
  kAbove,           // statistic > threshold
  kInfo,            // reported, never fails
};

struct NamedTest {
  std::string name;
  TestResult result;
  Criterion criterion = Criterion::kStatisticBelow;
  double threshold = 0.0;
  bool mandatory = true;
  bool pass = false;
  std::string detail;
};

enum class Verdict { kPass, kFail, kDemo };

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<NamedTest> tests;
  nlohmann::json summary = nlohmann::json::object();
  std::vector<std::string> notes;
  std::vector<std::string> stream_labels;
  bool demo_grade = false;
  double wall_seconds = 0.0;
  CsvTable samples;

  Verdict verdict() const;
  const NamedTest* find(const std::string& test_name) const;
  // Adds a test and evaluates its criterion.
  NamedTest& add(std::string name, TestResult result, Criterion criterion,
                 double threshold, bool mandatory = true);
};

/// Report as JSON; timing fields only when include_timing.
nlohmann::json report_json(const ExperimentReport& report,
                           bool include_timing = true);
/// report_json(report, false) dumped with fixed formatting.
std::string report_body(const ExperimentReport& report);

/// Writes <out>/report.json and <out>/samples_<name>.csv.
void write_artifacts(const ExperimentReport& report, const std::string& out);
void write_csv(const CsvTable& table, const std::string& path);

const std::vector<std::string>& experiment_names();
std::string experiment_description(const std::string& name);
/// Defaults for a named experiment; ConfigError for unknown names.
ExperimentConfig default_config(const std::string& name);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

ExperimentReport run_darling(const ExperimentConfig& cfg);
ExperimentReport run_nu_exponential(const ExperimentConfig& cfg);
ExperimentReport run_fdd_inverse(const ExperimentConfig& cfg);
ExperimentReport run_shotnoise_fdd(const ExperimentConfig& cfg);
ExperimentReport run_last_overshoot(const ExperimentConfig& cfg);
ExperimentReport run_self_similarity(const ExperimentConfig& cfg);
ExperimentReport run_j1_failure(const ExperimentConfig& cfg);
ExperimentReport run_uniformity(const ExperimentConfig& cfg);
ExperimentReport run_lemma_L1(const ExperimentConfig& cfg);
ExperimentReport run_srw2d_demo(const ExperimentConfig& cfg);

/// Fixed Cramer-Wold projections for an n-point grid: e_1, e_n, (1,...,1),
/// (1,2,...,n); duplicates removed.
std::vector<std::vector<double>> projection_vectors(std::size_t n);
std::vector<double> project(const std::vector<std::vector<double>>& rows,
                            const std::vector<double>& gamma);
std::vector<double> column(const std::vector<std::vector<double>>& rows,
                           std::size_t j);

/// sup_{y in [0, u - eps]} |h(L^{-1}(tu) - L^{-1}(ty)) / h(L^{-1}(t)) - u^alpha|
/// over `y_points` equally spaced y values (y = 0 included).
double uniformity_sup(const SlowVaryFn& L, const ShotShape& h, double t,
                      double u, double eps, std::size_t y_points = 1000);

/// J of u -> nu(L^{-1}(tau u)) / tau on [0, 1] with the path taken as 0 before
/// u = 0. Each renewal epoch contributes its own unit jump; epochs separated
/// by a zero increment would coincide and add up.
struct PrelimitJump {
  double J = 0.0;
  std::uint64_t nu = 0;
  std::uint64_t float_coincident_epochs = 0;  // S_k rounded equal to S_{k-1}
};
PrelimitJump prelimit_max_jump(const SlowVaryFn& L, double tau,
                               UniformSource& rng);

}  // namespace slowshot

#endif  // SLOWSHOT_EXPERIMENTS_HPP_
