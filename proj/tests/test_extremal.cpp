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

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "slowshot/errors.hpp"
#include "slowshot/extremal.hpp"
#include "slowshot/rng.hpp"
#include "slowshot/stats.hpp"

namespace slowshot {
namespace {

// Inverse of the extremal process with intensity dt x y^{-2} dy:
// P{m^<-(u) > t} = P{m(t) <= u} = exp(-t/u), i.e. Exp with mean u.
TEST(InverseFdd, MarginalsAreExponential) {
  const std::vector<double> grid{0.5, 1.0, 2.0};
  RngStream rng(11, "inverse-fdd-test", 0);
  std::vector<std::vector<double>> cols(grid.size());
  for (int r = 0; r < 100000; ++r) {
    const auto row = ext_sample_inverse_fdd(grid, rng);
    for (std::size_t i = 0; i < grid.size(); ++i) cols[i].push_back(row[i]);
    ASSERT_LE(row[0], row[1]);
    ASSERT_LE(row[1], row[2]);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double u = grid[i];
    const auto ks = ks_one_sample(
        cols[i], [u](double x) { return exponential_cdf(x, u); });
    EXPECT_GT(*ks.p_value, 1e-3) << "u = " << u;
  }
}

TEST(InverseFdd, IncrementsIndependentOfPast) {
  // m^<- has independent increments: m^<-(2) - m^<-(1) is independent of
  // m^<-(1) even though the two share every arrival before the first exceedance.
  const std::vector<double> grid{1.0, 2.0};
  RngStream rng(12, "inverse-fdd-test", 0);
  std::vector<double> first, incr;
  for (int r = 0; r < 50000; ++r) {
    const auto row = ext_sample_inverse_fdd(grid, rng);
    first.push_back(row[0]);
    incr.push_back(row[1] - row[0]);
  }
  EXPECT_LT(std::fabs(rank_correlation(first, incr)), 0.03);
}

TEST(InverseFdd, RejectsBadGrid) {
  RngStream rng(1, "x", 0);
  const std::vector<double> bad{1.0, 1.0};
  EXPECT_THROW(ext_sample_inverse_fdd(bad, rng), ContractError);
  const std::vector<double> neg{-1.0};
  EXPECT_THROW(ext_sample_inverse_fdd(neg, rng), ContractError);
}

TEST(Path, MarginalIsFrechetScaled) {
  RngStream rng(13, "path-test", 0);
  std::vector<double> at_one, at_three;
  for (int r = 0; r < 100000; ++r) {
    const StepPath p = ext_sample_path(3.0, 1e-4, rng);
    at_one.push_back(p.value_at(1.0));
    at_three.push_back(p.value_at(3.0));
  }
  // P{m(u) <= x} = exp(-u/x); the floor only touches mass e^{-10^4}.
  EXPECT_GT(*ks_one_sample(at_one, frechet_cdf).p_value, 1e-3);
  EXPECT_GT(*ks_one_sample(at_three,
                           [](double x) { return frechet_cdf(x / 3.0); })
                 .p_value,
            1e-3);
}

TEST(Path, RecordsIncreaseAndCountMatchesLogRange) {
  RngStream rng(14, "path-test", 1);
  // Record values form a Poisson process with intensity dy/y, so the count
  // in (a, b) has mean and variance log(b/a).
  const double a = 0.1, b = 100.0;
  const int walks = 100000;
  double total = 0.0;
  for (int r = 0; r < walks; ++r) {
    const StepPath p = ext_sample_path_to_level(b, 1e-3, rng);
    double prev_t = 0.0, prev_v = p.initial;
    for (const auto& s : p.steps) {
      ASSERT_GT(s.time, prev_t);
      ASSERT_GT(s.value, prev_v);
      prev_t = s.time;
      prev_v = s.value;
      if (s.value > a && s.value < b) total += 1.0;
    }
  }
  const double mean = std::log(b / a);
  const double sd = std::sqrt(mean / walks);
  EXPECT_NEAR(total / walks, mean, 3.0 * sd);
}

TEST(PrePost, OrderingAndJointCdf) {
  RngStream rng(15, "pre-post-test", 0);
  const int n = 100000;
  int hits = 0;
  for (int r = 0; r < n; ++r) {
    const PrePostJump j = ext_sample_pre_post(1.0, rng);
    ASSERT_GT(j.pre, 0.0);
    ASSERT_LE(j.pre, 1.0);
    ASSERT_GT(j.post, 1.0);
    if (j.pre <= 0.5 && j.post <= 2.0) ++hits;
  }
  EXPECT_NEAR(static_cast<double>(hits) / n, 0.25, 0.01);
}

TEST(PrePost, MarginalsAndIndependence) {
  RngStream rng(16, "pre-post-test", 1);
  const double u = 2.0;
  std::vector<double> pre, post, inv_post;
  for (int r = 0; r < 100000; ++r) {
    const PrePostJump j = ext_sample_pre_post(u, rng);
    pre.push_back(j.pre / u);
    post.push_back(j.post / u);
    inv_post.push_back(u / j.post);
  }
  EXPECT_GT(*ks_one_sample(pre, uniform01_cdf).p_value, 1e-3);
  EXPECT_GT(*ks_one_sample(post, pareto1_cdf).p_value, 1e-3);
  // Below the 0.999 quantile of chi-square with 16 df, i.e. p > 1e-3.
  EXPECT_GT(*chi2_independence(pre, inv_post, 5).p_value, 1e-3);
}

TEST(PrePost, ScalesLinearlyInLevel) {
  RngStream a(17, "pre-post-test", 2), b(17, "pre-post-test", 3);
  std::vector<double> pre1, post1, pre3, post3;
  for (int r = 0; r < 20000; ++r) {
    const PrePostJump x = ext_sample_pre_post(1.0, a);
    const PrePostJump y = ext_sample_pre_post(3.0, b);
    pre1.push_back(x.pre);
    post1.push_back(x.post);
    pre3.push_back(y.pre / 3.0);
    post3.push_back(y.post / 3.0);
  }
  EXPECT_LT(ks_two_sample(pre1, pre3).statistic, 0.02);
  EXPECT_LT(ks_two_sample(post1, post3).statistic, 0.02);
}

TEST(PrePost, DirectSamplerMatchesPathScan) {
  RngStream a(18, "direct-sampler", 0), b(18, "scan-oracle", 0);
  std::vector<double> pre_d, post_d, pre_s, post_s;
  for (int r = 0; r < 10000; ++r) {
    const PrePostJump d = ext_sample_pre_post(1.0, a);
    const PrePostJump s = ext_scan_pre_post(1.0, 1.0 / 1000.0, b);
    pre_d.push_back(d.pre);
    post_d.push_back(d.post);
    pre_s.push_back(s.pre);
    post_s.push_back(s.post);
  }
  EXPECT_LT(ks_two_sample(pre_d, pre_s).statistic, 0.02);
  EXPECT_LT(ks_two_sample(post_d, post_s).statistic, 0.02);
}

TEST(JointCdf, ClosedFormValues) {
  EXPECT_DOUBLE_EQ(ext_joint_cdf_pre_post(0.5, 2.0), 0.25);
  EXPECT_DOUBLE_EQ(ext_joint_cdf_pre_post(0.25, 4.0), 0.1875);
  EXPECT_NEAR(ext_joint_cdf_pre_post(1.0 - 1e-12, 1e12), 1.0, 1e-11);
  EXPECT_THROW(ext_joint_cdf_pre_post(1.5, 2.0), ContractError);
  EXPECT_THROW(ext_joint_cdf_pre_post(0.5, 0.5), ContractError);
}

TEST(InverseMaxJump, HoldingTimesBelowLevel) {
  StepPath p{0.01, {{1.0, 0.2}, {1.5, 0.6}, {4.0, 0.9}, {4.2, 3.0}}};
  // Records 0.2, 0.6, 0.9 are <= 1 with holding times 0.5, 2.5, 0.2.
  EXPECT_DOUBLE_EQ(ext_inverse_max_jump(p, 1.0), 2.5);
  EXPECT_DOUBLE_EQ(ext_inverse_max_jump(p, 0.5), 0.5);
  EXPECT_THROW(ext_inverse_max_jump(p, 5.0), ContractError);
  EXPECT_DOUBLE_EQ(p.value_at(0.5), 0.01);
  EXPECT_DOUBLE_EQ(p.value_at(1.5), 0.6);
}

}  // namespace
}  // namespace slowshot
