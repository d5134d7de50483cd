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
#include <limits>
#include <random>

#include "gtest/gtest.h"
#include "slowshot/errors.hpp"
#include "slowshot/numscale.hpp"

namespace slowshot {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// |a - b| measured in ulps of the larger log magnitude (at least 1).
double log_ulps(LogNum a, LogNum b) {
  const double scale = std::max({1.0, std::fabs(a.log()), std::fabs(b.log())});
  return std::fabs(a.log() - b.log()) / (kEps * scale);
}

TEST(LogNum, AddSmallIntegers) {
  const LogNum five = LogNum::from_value(2.0) + LogNum::from_value(3.0);
  EXPECT_NEAR(five.value(), 5.0, 4 * kEps * 5.0);
}

TEST(LogNum, ZeroIsAdditiveIdentity) {
  const LogNum x = LogNum::from_value(7.25);
  EXPECT_EQ(lognum_add(LogNum::zero(), x), x);
  EXPECT_EQ(lognum_add(x, LogNum::zero()), x);
  EXPECT_TRUE(lognum_add(LogNum::zero(), LogNum::zero()).is_zero());
}

TEST(LogNum, AddEqualHugeTerms) {
  const LogNum a = LogNum::from_log(1e12);
  EXPECT_DOUBLE_EQ((a + a).log(), 1e12 + M_LN2);
}

TEST(LogNum, SubSmallIntegers) {
  const LogNum three = LogNum::from_value(5.0) - LogNum::from_value(2.0);
  EXPECT_NEAR(three.value(), 3.0, 4 * kEps * 3.0);
}

TEST(LogNum, SubSelfIsZero) {
  const LogNum a = LogNum::from_log(123.5);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_TRUE((LogNum::zero() - LogNum::zero()).is_zero());
}

TEST(LogNum, SubHalfOfHugeValue) {
  const LogNum r = LogNum::from_log(100.0) - LogNum::from_log(100.0 - M_LN2);
  EXPECT_LE(log_ulps(r, LogNum::from_log(100.0 - M_LN2)), 4.0);
}

TEST(LogNum, SubRejectsNegativeResult) {
  EXPECT_THROW(LogNum::from_value(2.0) - LogNum::from_value(3.0), ContractError);
  EXPECT_THROW(LogNum::zero() - LogNum::from_value(1e-300), ContractError);
}

TEST(LogNum, Compare) {
  EXPECT_EQ(lognum_cmp(LogNum::zero(), LogNum::from_value(1.0)),
            std::partial_ordering::less);
  EXPECT_EQ(lognum_cmp(LogNum::from_value(2.0), LogNum::from_value(2.0)),
            std::partial_ordering::equivalent);
  EXPECT_EQ(lognum_cmp(LogNum::from_log(50.0), LogNum::from_log(49.999)),
            std::partial_ordering::greater);
}

TEST(LogNum, FromValueRoundTrip) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> exponent(-300.0, 300.0);
  for (int i = 0; i < 10000; ++i) {
    const double x = std::pow(10.0, exponent(gen));
    const double lx = LogNum::from_value(x).log();
    EXPECT_LE(std::fabs(lx - std::log(x)),
              std::nextafter(std::fabs(std::log(x)), INFINITY) -
                  std::fabs(std::log(x)));
  }
  EXPECT_THROW(LogNum::from_value(-1.0), ContractError);
  EXPECT_TRUE(LogNum::from_value(0.0).is_zero());
}

TEST(LogNum, Serialization) {
  EXPECT_EQ(to_string(LogNum::zero()), "0");
  EXPECT_EQ(to_string(LogNum::from_value(2.5)), "2.5");
  EXPECT_EQ(to_string(LogNum::from_log(1e4)), "log:10000");
  EXPECT_EQ(to_string(LogNum::from_log(-800.5)), "log:-800.5");
  EXPECT_EQ(lognum_parse("log:10000").log(), 1e4);
  EXPECT_NEAR(lognum_parse("2.5").value(), 2.5, 1e-15);
  EXPECT_TRUE(lognum_parse("0").is_zero());
}

// Distance in units of the spacing of doubles at the larger magnitude.
double strict_ulps(double x, double y) {
  const double m = std::max(std::fabs(x), std::fabs(y));
  return std::fabs(x - y) / (std::nextafter(m, INFINITY) - m);
}

// Randomized triples with logs in [-30, 30].
class LogNumProperties : public ::testing::Test {
 protected:
  std::mt19937_64 gen{20261018};
  std::uniform_real_distribution<double> log_dist{-30.0, 30.0};
  LogNum draw() { return LogNum::from_log(log_dist(gen)); }
};

TEST_F(LogNumProperties, AddCommutesAndAssociates) {
  for (int i = 0; i < 20000; ++i) {
    const LogNum a = draw(), b = draw(), c = draw();
    EXPECT_EQ(a + b, b + a);
    EXPECT_LE(log_ulps((a + b) + c, a + (b + c)), 4.0);
  }
}

// The literal invariant: recover a within 4 log-scale ulps for any
// log a - log b in [-30, 30]. Storing only log(a + b) keeps about
// 52 - (log b - log a)/ln 2 bits of a, so this cannot hold when b >> a.
TEST_F(LogNumProperties, SubUndoesAddWithinFourUlps) {
  std::uniform_real_distribution<double> gap(-30.0, 30.0);
  int failures = 0;
  double worst = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const LogNum a = draw();
    const LogNum b = LogNum::from_log(a.log() - gap(gen));
    const double u = strict_ulps(((a + b) - b).log(), a.log());
    worst = std::max(worst, u);
    failures += u > 4.0;
  }
  EXPECT_EQ(failures, 0) << "worst " << worst << " ulps";
}

TEST_F(LogNumProperties, SubUndoesAdd) {
  for (int i = 0; i < 20000; ++i) {
    const LogNum a = draw(), b = draw();
    const LogNum sum = a + b;
    const LogNum back = sum - b;
    // Each operation is accurate to a few ulps of its log, i.e. relative error
    // about eps * |log|. After cancelling b that error is measured against the
    // sum, not against a: |back - a| <= 8 eps max(1, |log sum|) (a + b).
    const double scale = std::max(1.0, std::fabs(sum.log()));
    const double rel_to_a = std::fabs(std::expm1(back.log() - a.log()));
    const double bound = 8.0 * kEps * scale * std::exp(sum.log() - a.log());
    EXPECT_LE(rel_to_a, bound) << "log a=" << a.log() << " log b=" << b.log();
    if (a.log() >= b.log()) EXPECT_LE(log_ulps(back, a), 8.0);
  }
}

TEST(LogNum, InfinityAbsorbs) {
  const LogNum big = LogNum::infinity();
  EXPECT_EQ(big + LogNum::from_log(1e300), big);
  EXPECT_EQ(LogNum::from_value(2.0) + big, big);
  EXPECT_EQ(big + big, big);
  EXPECT_GT(big, LogNum::from_log(1e308));
}

TEST_F(LogNumProperties, SumDominatesSummands) {
  for (int i = 0; i < 20000; ++i) {
    const LogNum a = draw(), b = draw();
    EXPECT_LE(a, a + b);
    EXPECT_LE(b, a + b);
  }
}

}  // namespace
}  // namespace slowshot
