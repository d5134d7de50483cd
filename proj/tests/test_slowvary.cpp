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

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "gtest/gtest.h"
#include "slowshot/errors.hpp"
#include "slowshot/slowvary.hpp"

namespace slowshot {
namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 61>;

// I(x) = int_0^x eps(u)/u du for eps = u on [0,1], 1/ln(e+u) above,
// integrated in s = log u past 1 so the fixed-order rule sees smooth pieces.
double inv_log_integral(double log_x) {
  if (log_x <= 0.0) return std::exp(log_x);
  double total = 1.0;
  double lo = 0.0;
  while (lo < log_x) {
    const double hi = std::min(log_x, lo + 4.0);
    total += GK::integrate(
        [](double s) { return 1.0 / std::log(M_E + std::exp(s)); }, lo, hi, 15,
        1e-14);
    lo = hi;
  }
  return total;
}

TEST(LogPow, CanonicalValues) {
  const SlowVaryFn L2 = SlowVaryFn::log_pow(2.0);
  EXPECT_NEAR(L2(LogNum::from_value(M_E - 1.0)), 1.0, 1e-14);
  const SlowVaryFn L1 = SlowVaryFn::log_pow(1.0);
  EXPECT_EQ(L1(LogNum::zero()), 0.0);
  EXPECT_NEAR(L1(LogNum::from_value(1e6)), std::log1p(1e6), 1e-12);
}

TEST(LogPow, InverseClosedForm) {
  const SlowVaryFn L1 = SlowVaryFn::log_pow(1.0);
  EXPECT_NEAR(L1.inverse(4.0).value(), std::expm1(4.0), 1e-10 * std::exp(4.0));
  const SlowVaryFn Lh = SlowVaryFn::log_pow(0.5);
  EXPECT_NEAR(Lh.inverse(3.0).value(), std::expm1(9.0), 1e-10 * std::exp(9.0));
  // Far beyond double range: log L^{-1}(y) = y^{1/beta} up to e^{-y} terms.
  EXPECT_DOUBLE_EQ(L1.inverse(1e6).log(), 1e6);
  EXPECT_DOUBLE_EQ(Lh.inverse(1e3).log(), 1e6);
}

TEST(LogPow, RejectsBadExponent) {
  EXPECT_THROW(SlowVaryFn::log_pow(0.0), ConfigError);
  EXPECT_THROW(SlowVaryFn::log_pow(-1.0), ConfigError);
  EXPECT_THROW(SlowVaryFn::log_pow(NAN), ConfigError);
  EXPECT_THROW(parse_slowvary("logpow:abc"), ConfigError);
  EXPECT_THROW(parse_slowvary("power:2"), ConfigError);
}

TEST(LogLog, SlowVariationAtLargeArgument) {
  const SlowVaryFn L = SlowVaryFn::log_log();
  const LogNum x = LogNum::from_value(1e30);
  const double r = L(x * LogNum::from_value(2.0)) / L(x);
  EXPECT_NEAR(r, 1.0, 1e-2);
  EXPECT_NEAR(L(x), std::log1p(std::log1p(1e30)), 1e-13);
}

class RoundTrip : public ::testing::TestWithParam<std::string> {};

TEST_P(RoundTrip, InverseOfEval) {
  const SlowVaryFn L = parse_slowvary(GetParam());
  for (double lx = -5.0; lx <= std::log(1e6); lx += 0.25) {
    const LogNum x = LogNum::from_log(lx);
    const LogNum back = L.inverse(L(x));
    EXPECT_NEAR(back.log(), lx, 1e-10 * std::max(1.0, std::fabs(lx)))
        << GetParam() << " at log x = " << lx;
  }
}

TEST_P(RoundTrip, SlowVariation) {
  const SlowVaryFn L = parse_slowvary(GetParam());
  const LogNum x = LogNum::from_log(700.0);
  for (double lam : {0.5, 2.0, 10.0}) {
    const double r = L(x * LogNum::from_value(lam)) / L(x);
    EXPECT_NEAR(r, 1.0, 1e-2) << GetParam() << " lambda " << lam;
  }
}

TEST_P(RoundTrip, Monotone) {
  const SlowVaryFn L = parse_slowvary(GetParam());
  double prev = L(LogNum::zero());
  EXPECT_EQ(prev, 0.0);
  for (double lx = -10.0; lx <= 50.0; lx += 0.01) {
    const double v = L(LogNum::from_log(lx));
    ASSERT_GT(v, prev) << GetParam() << " at " << lx;
    prev = v;
  }
}

INSTANTIATE_TEST_SUITE_P(Families, RoundTrip,
                         ::testing::Values("logpow:1", "logpow:2",
                                           "logpow:0.5", "loglog"));

TEST(Representation, AgreesWithIndependentQuadrature) {
  const SlowVaryFn L1 = SlowVaryFn::from_representation({});
  EXPECT_NEAR(L1.b_constant(), 0.0, 1e-8);
  for (double lx : {-3.0, 0.0, 1.0, 5.0, std::log(1e4), 100.0}) {
    const double I = inv_log_integral(lx);
    EXPECT_NEAR(L1.log_integral(LogNum::from_log(lx)), I, 1e-7 * I)
        << "log x = " << lx;
    EXPECT_NEAR(L1(LogNum::from_log(lx)), std::expm1(I), 1e-7 * std::exp(I));
  }
}

TEST(Representation, RatioAtIntegralLevel) {
  const SlowVaryFn L1 = SlowVaryFn::from_representation({});
  // Solve I(x) = 3.9 with the oracle, then check the identity there.
  boost::uintmax_t iters = 200;
  const auto [lo, hi] = boost::math::tools::bisect(
      [](double lx) { return inv_log_integral(lx) - 3.9; }, 0.0, 50.0,
      boost::math::tools::eps_tolerance<double>(50), iters);
  const LogNum x = LogNum::from_log(0.5 * (lo + hi));
  const double ratio = L1(x) / L1.original(x);
  EXPECT_NEAR(ratio, -std::expm1(-3.9), 1e-6);
  EXPECT_NEAR(ratio, 0.9798, 5e-5);
}

TEST(Representation, BConstantsForModifiedPresets) {
  RepresentationSpec gap;
  gap.epsilon = epsilon_preset("inv_log_gap");
  EXPECT_NEAR(SlowVaryFn::from_representation(gap).b_constant(), -0.3, 1e-8);
  RepresentationSpec head;
  head.epsilon = epsilon_preset("flat_head");
  EXPECT_NEAR(SlowVaryFn::from_representation(head).b_constant(), -1.0, 1e-8);
}

TEST(Representation, ZeroAtOriginAndIncreasing) {
  for (const char* name : {"inv_log", "inv_log_gap", "flat_head"}) {
    RepresentationSpec spec;
    spec.epsilon = epsilon_preset(name);
    const SlowVaryFn L1 = SlowVaryFn::from_representation(spec);
    EXPECT_EQ(L1(LogNum::zero()), 0.0) << name;
    double prev = 0.0;
    for (double lx = std::log(1e-3); lx <= std::log(1e4); lx += 0.01) {
      const double v = L1(LogNum::from_log(lx));
      ASSERT_GT(v, prev) << name << " at " << lx;
      prev = v;
    }
  }
}

TEST(Representation, InverseRoundTrip) {
  RepresentationSpec spec;
  spec.epsilon = epsilon_preset("inv_log_gap");
  const SlowVaryFn L1 = SlowVaryFn::from_representation(spec);
  for (double lx = -4.0; lx <= 40.0; lx += 0.37) {
    const LogNum back = L1.inverse(L1(LogNum::from_log(lx)));
    EXPECT_NEAR(back.log(), lx, 1e-8 * std::max(1.0, std::fabs(lx)));
  }
}

TEST(Representation, RejectsNegativeEpsilon) {
  RepresentationSpec spec;
  spec.epsilon = {"negative", [](double u) { return u < 3.0 ? 0.5 : -0.1; },
                  {3.0}};
  EXPECT_THROW(SlowVaryFn::from_representation(spec), ContractError);
  RepresentationSpec bad_c;
  bad_c.c = 0.0;
  EXPECT_THROW(SlowVaryFn::from_representation(bad_c), ContractError);
}

TEST(Representation, SpecParsing) {
  const RepresentationSpec s =
      parse_representation_spec("c = 2\nepsilon = flat_head\n# note\n");
  EXPECT_EQ(s.c, 2.0);
  EXPECT_EQ(s.epsilon.name, "flat_head");
  EXPECT_THROW(parse_representation_spec("colour=blue"), ConfigError);
  EXPECT_THROW(parse_representation_spec("epsilon=unknown"), ConfigError);
}

TEST(Representation, OnlyForRepresentationKind) {
  EXPECT_THROW(SlowVaryFn::log_pow(1.0).b_constant(), ContractError);
}

TEST(Helpers, Log1pAndExpm1) {
  EXPECT_NEAR(log1p_lognum(LogNum::from_value(1e-20)), 1e-20, 1e-35);
  EXPECT_DOUBLE_EQ(log1p_lognum(LogNum::from_log(1e4)), 1e4);
  EXPECT_NEAR(log_expm1(1e-10), std::log(std::expm1(1e-10)), 1e-12);
  EXPECT_DOUBLE_EQ(log_expm1(1e3), 1e3);
}

}  // namespace
}  // namespace slowshot
