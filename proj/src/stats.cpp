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

#include "slowshot/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "slowshot/errors.hpp"

namespace slowshot {

EcdfView::EcdfView(std::span<const double> sample)
    : sorted_(sample.begin(), sample.end()) {
  if (sorted_.empty()) throw ContractError("EcdfView: empty sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EcdfView::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) /
         static_cast<double>(sorted_.size());
}

double kolmogorov_cdf(double lambda) {
  if (!(lambda > 0.0)) return 0.0;
  constexpr double kTermFloor = 1e-12;
  if (lambda < 1.0) {
    // Jacobi theta form; the alternating series converges slowly here.
    const double pi2_8l2 = M_PI * M_PI / (8.0 * lambda * lambda);
    double sum = 0.0;
    for (int k = 1; k < 1000; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(-odd * odd * pi2_8l2);
      sum += term;
      if (term < kTermFloor * std::max(sum, 1e-300)) break;
    }
    return std::clamp(std::sqrt(2.0 * M_PI) / lambda * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k < 1000; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < kTermFloor) break;
  }
  return std::clamp(1.0 - 2.0 * sum, 0.0, 1.0);
}

TestResult ks_one_sample(std::span<const double> sample,
                         const std::function<double(double)>& cdf) {
  if (sample.size() < 10) throw ContractError("ks_one_sample: need n >= 10");
  const EcdfView ecdf(sample);
  const auto xs = ecdf.sorted();
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    if (!(f >= 0.0 && f <= 1.0)) {
      throw ContractError("ks_one_sample: cdf value outside [0, 1]");
    }
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f,
                  f - static_cast<double>(i) / n});
  }
  return {d, 1.0 - kolmogorov_cdf(std::sqrt(n) * d), xs.size(), 0};
}

TestResult ks_two_sample(std::span<const double> a,
                         std::span<const double> b) {
  if (a.size() < 10 || b.size() < 10) {
    throw ContractError("ks_two_sample: need sizes >= 10");
  }
  const EcdfView ea(a), eb(b);
  const auto xa = ea.sorted(), xb = eb.sorted();
  const double n = static_cast<double>(xa.size());
  const double m = static_cast<double>(xb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < xa.size() && j < xb.size()) {
    const double v = std::min(xa[i], xb[j]);
    while (i < xa.size() && xa[i] == v) ++i;
    while (j < xb.size() && xb[j] == v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / n -
                              static_cast<double>(j) / m));
  }
  const double scale = std::sqrt(n * m / (n + m));
  return {d, 1.0 - kolmogorov_cdf(scale * d), xa.size(), xb.size()};
}

std::vector<double> rank_transform(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&x](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const double mid = 0.5 * static_cast<double>(i + j) + 1.0;  // 1-based
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = (mid - 0.5) / n;
    i = j + 1;
  }
  return ranks;
}

double chi2_survival(double x, double df) {
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * df, 0.5 * x);
}

TestResult chi2_independence(std::span<const double> x,
                             std::span<const double> y, int k) {
  if (k < 2) throw ContractError("chi2_independence: k >= 2");
  if (x.size() != y.size()) {
    throw ContractError("chi2_independence: length mismatch");
  }
  const std::size_t kk = static_cast<std::size_t>(k) * k;
  if (x.size() < 50 * kk) {
    throw ContractError("chi2_independence: need n >= 50 k^2");
  }
  const auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(),
                       [&v](double e) { return e == v.front(); });
  };
  if (constant(x) || constant(y)) {
    throw ContractError("chi2_independence: degenerate coordinate");
  }
  const std::vector<double> rx = rank_transform(x), ry = rank_transform(y);
  std::vector<double> cells(kk, 0.0), row(k, 0.0), col(k, 0.0);
  const auto bin = [k](double r) {
    return std::min(k - 1, static_cast<int>(r * k));
  };
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const int a = bin(rx[i]), b = bin(ry[i]);
    cells[static_cast<std::size_t>(a) * k + b] += 1.0;
    row[a] += 1.0;
    col[b] += 1.0;
  }
  const double n = static_cast<double>(x.size());
  double stat = 0.0;
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      const double expected = row[a] * col[b] / n;
      const double diff = cells[static_cast<std::size_t>(a) * k + b] - expected;
      stat += diff * diff / expected;
    }
  }
  const double df = static_cast<double>((k - 1) * (k - 1));
  return {stat, chi2_survival(stat, df), x.size(), 0};
}

double rank_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ContractError("rank_correlation: need equal lengths >= 2");
  }
  const std::vector<double> rx = rank_transform(x), ry = rank_transform(y);
  const double n = static_cast<double>(rx.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

double exponential_cdf(double x, double mean) {
  return x <= 0.0 ? 0.0 : -std::expm1(-x / mean);
}
double frechet_cdf(double x) { return x <= 0.0 ? 0.0 : std::exp(-1.0 / x); }
double pareto1_cdf(double x) { return x <= 1.0 ? 0.0 : 1.0 - 1.0 / x; }
double uniform01_cdf(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace slowshot
