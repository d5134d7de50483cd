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

#include "slowshot/renewal.hpp"

#include <cmath>

#include "slowshot/errors.hpp"

namespace slowshot {
namespace {

void check_grid(double tau, std::span<const double> u_grid) {
  if (!(tau > 0.0)) throw ContractError("tau must be > 0");
  if (u_grid.empty() || !(u_grid.front() > 0.0)) {
    throw ContractError("u grid must be nonempty and positive");
  }
  for (std::size_t i = 1; i < u_grid.size(); ++i) {
    if (!(u_grid[i] > u_grid[i - 1])) {
      throw ContractError("u grid must be strictly increasing");
    }
  }
}

[[noreturn]] void step_cap_exceeded() {
  throw NumericError("renewal walk: step cap exceeded");
}

}  // namespace

double ShotShape::of_l(double l_value) const {
  if (form == Form::kUnit) return 1.0;
  if (alpha < 0.0) return std::pow(std::max(l_value, 1.0), alpha);
  return std::pow(l_value, alpha);
}

LogNum rw_sample_increment(const SlowVaryFn& L, UniformSource& rng) {
  // An increment past the LogNum range exceeds every representable horizon,
  // so it only ever ends a walk; loglog reaches this when 1/U > ~709.
  return L.inverse_or_infinite(1.0 / rng.uniform());
}

RenewalCrossing rw_first_passage(const SlowVaryFn& L, LogNum t,
                                 UniformSource& rng, std::uint64_t step_cap) {
  LogNum prev, sum;
  std::uint64_t k = 0;
  while (sum <= t) {
    if (++k > step_cap) step_cap_exceeded();
    prev = sum;
    sum = sum + rw_sample_increment(L, rng);
  }
  return {k, prev, sum};
}

std::vector<double> rw_scaled_nu_fdd(const SlowVaryFn& L, double tau,
                                     std::span<const double> u_grid,
                                     UniformSource& rng,
                                     std::uint64_t step_cap) {
  check_grid(tau, u_grid);
  std::vector<double> out;
  out.reserve(u_grid.size());
  LogNum sum;
  std::uint64_t k = 0;
  for (double u : u_grid) {
    const LogNum t = L.inverse(tau * u);
    while (sum <= t) {
      if (++k > step_cap) step_cap_exceeded();
      sum = sum + rw_sample_increment(L, rng);
    }
    out.push_back(static_cast<double>(k) / tau);
  }
  return out;
}

std::vector<LogNum> rw_epochs_until(const SlowVaryFn& L, LogNum t,
                                    UniformSource& rng,
                                    std::uint64_t step_cap) {
  std::vector<LogNum> epochs{LogNum::zero()};
  while (epochs.back() <= t) {
    if (epochs.size() > step_cap) step_cap_exceeded();
    epochs.push_back(epochs.back() + rw_sample_increment(L, rng));
  }
  return epochs;
}

double rw_shot_noise(const SlowVaryFn& L, const ShotShape& h, LogNum t,
                     UniformSource& rng, std::uint64_t step_cap) {
  const std::vector<LogNum> epochs = rw_epochs_until(L, t, rng, step_cap);
  double y = 0.0;
  for (std::size_t k = 0; k + 1 < epochs.size(); ++k) {
    y += h(L, t - epochs[k]);
  }
  return y;
}

std::vector<double> rw_scaled_shot_noise_fdd(const SlowVaryFn& L,
                                             const ShotShape& h, double tau,
                                             std::span<const double> u_grid,
                                             UniformSource& rng,
                                             std::uint64_t step_cap) {
  check_grid(tau, u_grid);
  const std::vector<LogNum> epochs =
      rw_epochs_until(L, L.inverse(tau * u_grid.back()), rng, step_cap);
  const double norm = tau * h(L, L.inverse(tau));
  std::vector<double> out;
  out.reserve(u_grid.size());
  for (double u : u_grid) {
    const LogNum t = L.inverse(tau * u);
    double y = 0.0;
    for (std::size_t k = 0; k < epochs.size() && epochs[k] <= t; ++k) {
      y += h(L, t - epochs[k]);
    }
    out.push_back(y / norm);
  }
  return out;
}

LogNum rw_partial_sum(const SlowVaryFn& L, std::uint64_t n,
                      UniformSource& rng) {
  LogNum sum;
  for (std::uint64_t k = 0; k < n; ++k) sum = sum + rw_sample_increment(L, rng);
  return sum;
}

std::vector<std::uint64_t> rw_srw2d_returns(std::uint64_t n_steps,
                                            UniformSource& rng) {
  if (n_steps < 1) throw ContractError("rw_srw2d_returns: n_steps >= 1");
  std::vector<std::uint64_t> returns;
  long long x = 0, y = 0;
  for (std::uint64_t step = 1; step <= n_steps; ++step) {
    switch (static_cast<int>(4.0 * rng.uniform())) {
      case 0: ++x; break;
      case 1: --x; break;
      case 2: ++y; break;
      default: --y; break;
    }
    if (x == 0 && y == 0) returns.push_back(step);
  }
  return returns;
}

}  // namespace slowshot
