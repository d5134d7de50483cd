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

#ifndef SLOWSHOT_STATS_HPP_
#define SLOWSHOT_STATS_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace slowshot {

/// Sorted copy of a sample.
class EcdfView {
 public:
  explicit EcdfView(std::span<const double> sample);
  std::span<const double> sorted() const { return sorted_; }
  std::size_t size() const { return sorted_.size(); }
  // Fraction of sample values <= x.
  double operator()(double x) const;

 private:
  std::vector<double> sorted_;
};

struct TestResult {
  double statistic = 0.0;
  std::optional<double> p_value;  // empty when not applicable
  std::size_t n = 0;
  std::size_t m = 0;  // second sample size, 0 for one-sample tests
};

/// Q(lambda) = 1 - 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2), the limit law
/// of sqrt(n) D_n.
double kolmogorov_cdf(double lambda);

/// D_n = sup |F_n - F| with the asymptotic p-value 1 - Q(sqrt(n) D_n).
TestResult ks_one_sample(std::span<const double> sample,
                         const std::function<double(double)>& cdf);

/// D = sup |F_n - G_m| with p = 1 - Q(sqrt(nm/(n+m)) D).
TestResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Pearson chi-square test of independence on a k x k grid of rank-transformed
/// coordinates, (k-1)^2 degrees of freedom.
TestResult chi2_independence(std::span<const double> x,
                             std::span<const double> y, int k);

/// Upper tail P{chi2_df > x}.
double chi2_survival(double x, double df);

/// Spearman rank correlation.
double rank_correlation(std::span<const double> x, std::span<const double> y);

/// Mid-ranks scaled into (0, 1): (rank - 0.5) / n.
std::vector<double> rank_transform(std::span<const double> x);

// Reference laws used throughout the experiments.
double exponential_cdf(double x, double mean);
double frechet_cdf(double x);
double pareto1_cdf(double x);
double uniform01_cdf(double x);

}  // namespace slowshot

#endif  // SLOWSHOT_STATS_HPP_
