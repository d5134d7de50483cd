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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "slowshot/errors.hpp"
#include "slowshot/experiments.hpp"

namespace slowshot {
namespace {

namespace fs = std::filesystem;

ExperimentConfig small(const std::string& name, std::size_t replicas = 2000,
                       double tau = 1e3) {
  ExperimentConfig cfg = default_config(name);
  cfg.replicas = replicas;
  cfg.tau = tau;
  return cfg;
}

TEST(Registry, TenExperimentsWithDescriptions) {
  const auto& names = experiment_names();
  EXPECT_EQ(names.size(), 10u);
  for (const auto& n : names) {
    EXPECT_FALSE(experiment_description(n).empty()) << n;
    EXPECT_EQ(default_config(n).name, n);
  }
  EXPECT_THROW(default_config("bogus"), ConfigError);
}

TEST(Config, Validation) {
  ExperimentConfig cfg = default_config("nu-exponential");
  cfg.replicas = 50;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.replicas = 1000;
  cfg.u_grid = {1.0, 0.5};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.u_grid = {1.0};
  cfg.tau = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Projections, FixedDirections) {
  const auto g = projection_vectors(3);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_EQ(g[0], (std::vector<double>{1, 0, 0}));
  EXPECT_EQ(g[1], (std::vector<double>{0, 0, 1}));
  EXPECT_EQ(g[2], (std::vector<double>{1, 1, 1}));
  EXPECT_EQ(g[3], (std::vector<double>{1, 2, 3}));
  const std::vector<std::vector<double>> rows{{1, 2, 3}, {0, 1, 0}};
  EXPECT_EQ(project(rows, g[3]), (std::vector<double>{14, 2}));
  EXPECT_EQ(column(rows, 1), (std::vector<double>{2, 1}));
}

TEST(NuExponential, SmallRunIdentityHolds) {
  const auto rep = run_nu_exponential(small("nu-exponential"));
  const NamedTest* id = rep.find("unit_shot_noise_equals_nu");
  ASSERT_NE(id, nullptr);
  EXPECT_TRUE(id->pass);
  EXPECT_EQ(id->result.statistic, 0.0);
  EXPECT_EQ(rep.samples.rows.size(), 2000u);
}

TEST(Determinism, ReportBodyIndependentOfThreads) {
  ExperimentConfig a = small("fdd-inverse", 500);
  ExperimentConfig b = a;
  a.threads = 1;
  b.threads = 4;
  const std::string body = report_body(run_fdd_inverse(a));
  EXPECT_EQ(body, report_body(run_fdd_inverse(b)));
  ExperimentConfig c = a;
  c.exec = Exec::kSerial;
  EXPECT_EQ(body, report_body(run_fdd_inverse(c)));
}

TEST(ShotNoise, UnitShapeReproducesInverseSamples) {
  ExperimentConfig cfg = small("shotnoise-fdd", 500);
  cfg.alpha = 0.0;
  const auto shot = run_shotnoise_fdd(cfg);
  const auto nu = run_fdd_inverse(small("fdd-inverse", 500));
  EXPECT_EQ(shot.samples.rows, nu.samples.rows);
}

TEST(SelfSimilarity, SameSeedSameLevelGivesZeroDistance) {
  const ReplicaPlan plan{42, "pre-post-base", 2000, 0, Exec::kParallel};
  const auto a = batch_pre_post(1.0, plan), b = batch_pre_post(1.0, plan);
  std::vector<double> pa, pb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    pa.push_back(a[i].pre);
    pb.push_back(b[i].pre);
  }
  EXPECT_EQ(ks_two_sample(pa, pb).statistic, 0.0);
}

TEST(SelfSimilarity, SmallRunStructure) {
  const auto rep = run_self_similarity(small("self-similarity", 2000));
  ASSERT_NE(rep.find("pre_scaling_ks2[u=3]"), nullptr);
  ASSERT_NE(rep.find("post_scaling_ks2[u=3]"), nullptr);
  const NamedTest* order = rep.find("pre_le_u_lt_post[u=3]");
  ASSERT_NE(order, nullptr);
  EXPECT_EQ(order->result.statistic, 0.0);
  for (const char* n : {"joint_cdf[0.5,2]", "joint_cdf[0.25,4]"}) {
    ASSERT_NE(rep.find(n), nullptr) << n;
    EXPECT_TRUE(rep.find(n)->pass) << n;
  }
}

TEST(Smoke, HundredReplicasGiveCompleteReports) {
  for (const char* name : {"darling", "nu-exponential"}) {
    const auto rep = run_experiment(small(name, 100, 1e3));
    EXPECT_FALSE(rep.tests.empty()) << name;
    EXPECT_EQ(rep.samples.rows.size(), 100u) << name;
    const auto j = report_json(rep);
    EXPECT_TRUE(j["verdict"] == "pass" || j["verdict"] == "fail") << name;
  }
}

TEST(Darling, DeskScalePasses) {
  const auto rep = run_darling(small("darling", 10000, 1e4));
  const NamedTest* ks = rep.find("frechet_ks");
  ASSERT_NE(ks, nullptr);
  EXPECT_LT(ks->result.statistic, 0.03);
  EXPECT_EQ(report_body(rep), report_body(run_darling(small("darling", 10000, 1e4))));
}

TEST(J1Failure, PrelimitJumpIsReciprocalTau) {
  const SlowVaryFn L = SlowVaryFn::log_pow(1.0);
  for (std::uint32_t r = 0; r < 100; ++r) {
    RngStream s(3, kWalkLabel, r);
    const PrelimitJump j = prelimit_max_jump(L, 500.0, s);
    ASSERT_GE(j.nu, 1u);
    EXPECT_EQ(j.J, 1.0 / 500.0);
  }
  const auto rep = run_j1_failure(small("j1-failure", 500));
  EXPECT_NE(rep.verdict(), Verdict::kFail);
}

TEST(Uniformity, UnitShapeIsExact) {
  const SlowVaryFn L = SlowVaryFn::log_pow(1.0);
  EXPECT_EQ(uniformity_sup(L, ShotShape::lpow(0.0), 100.0, 2.0, 0.5), 0.0);
  EXPECT_EQ(uniformity_sup(L, ShotShape::unit(), 100.0, 2.0, 0.5), 0.0);
  // Small t leaves a visible gap for the ratio shape.
  EXPECT_GT(uniformity_sup(L, ShotShape::lpow(1.0), 1.0, 2.0, 0.5), 1e-3);
  EXPECT_THROW(uniformity_sup(L, ShotShape::unit(), 10.0, 2.0, 3.0),
               ContractError);
}

TEST(Uniformity, ReportPasses) {
  const auto rep = run_uniformity(default_config("uniformity"));
  EXPECT_EQ(rep.verdict(), Verdict::kPass);
  ASSERT_NE(rep.find("y0_entry_deviation"), nullptr);
  EXPECT_EQ(rep.find("unit_shape_sup_zero_all_t"), nullptr);
  ExperimentConfig zero = default_config("uniformity");
  zero.alpha = 0.0;
  const auto rz = run_uniformity(zero);
  ASSERT_NE(rz.find("unit_shape_sup_zero_all_t"), nullptr);
  EXPECT_TRUE(rz.find("unit_shape_sup_zero_all_t")->pass);
}

TEST(LemmaL1, AllPresetsPass) {
  const auto rep = run_lemma_L1(default_config("lemma-L1"));
  for (const auto& t : rep.tests) EXPECT_TRUE(t.pass) << t.name;
  EXPECT_EQ(rep.verdict(), Verdict::kPass);
}

TEST(Srw2d, DemoGrade) {
  ExperimentConfig cfg = default_config("srw2d-demo");
  cfg.replicas = 500;
  const auto rep = run_srw2d_demo(cfg);
  EXPECT_TRUE(rep.demo_grade);
  EXPECT_EQ(rep.verdict(), Verdict::kDemo);
}

TEST(Artifacts, JsonAndCsvShape) {
  const auto rep = run_fdd_inverse(small("fdd-inverse", 300));
  const fs::path dir = fs::temp_directory_path() / "slowshot_artifact_test";
  fs::remove_all(dir);
  write_artifacts(rep, dir.string());
  std::ifstream jf(dir / "report.json");
  ASSERT_TRUE(jf);
  const nlohmann::json j = nlohmann::json::parse(jf);
  for (const char* key : {"experiment", "config", "tests", "summary", "notes",
                          "verdict", "rng", "timing"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["experiment"], "fdd-inverse");
  EXPECT_EQ(j["tests"].size(), rep.tests.size());
  EXPECT_FALSE(report_json(rep, false).contains("timing"));

  std::ifstream cf(dir / "samples_fdd-inverse.csv");
  ASSERT_TRUE(cf);
  std::string header;
  std::getline(cf, header);
  EXPECT_EQ(std::count(header.begin(), header.end(), ','),
            static_cast<long>(rep.samples.columns.size()) - 1);
  std::size_t lines = 0;
  for (std::string line; std::getline(cf, line);) ++lines;
  EXPECT_EQ(lines, rep.samples.rows.size());
  fs::remove_all(dir);
}

}  // namespace
}  // namespace slowshot
