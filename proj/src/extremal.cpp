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

#include "slowshot/extremal.hpp"

#include <algorithm>
#include <cmath>

#include "slowshot/errors.hpp"

namespace slowshot {
namespace {

constexpr std::size_t kArrivalCap = 10'000'000;

// One step of the record chain from state x: marks above x arrive at rate
// 1/x and overshoot with survival x/z.
inline void chain_step(double& time, double& state, UniformSource& rng) {
  time += rng_exponential(rng, state);
  state = state / rng.uniform();
}

void check_floor(double floor) {
  if (!(floor > 0.0)) throw ContractError("extremal path: floor must be > 0");
}

}  // namespace

double StepPath::value_at(double u) const {
  auto it = std::upper_bound(
      steps.begin(), steps.end(), u,
      [](double v, const Step& s) { return v < s.time; });
  if (it == steps.begin()) return initial;
  return std::prev(it)->value;
}

std::vector<double> ext_sample_inverse_fdd(std::span<const double> u_grid,
                                           UniformSource& rng) {
  if (u_grid.empty() || !(u_grid.front() > 0.0)) {
    throw ContractError("ext_sample_inverse_fdd: grid must be positive");
  }
  for (std::size_t i = 1; i < u_grid.size(); ++i) {
    if (!(u_grid[i] > u_grid[i - 1])) {
      throw ContractError("ext_sample_inverse_fdd: grid must increase");
    }
  }
  const double base = u_grid.front();
  std::vector<double> out(u_grid.size());
  std::size_t next = 0;
  double time = 0.0;
  for (std::size_t arrivals = 0; arrivals < kArrivalCap; ++arrivals) {
    time += rng_exponential(rng, base);
    const double mark = base / rng.uniform();
    while (next < u_grid.size() && mark > u_grid[next]) out[next++] = time;
    if (next == u_grid.size()) return out;
  }
  throw NumericError("ext_sample_inverse_fdd: arrival cap exceeded");
}

StepPath ext_sample_path(double horizon, double floor, UniformSource& rng) {
  if (!(horizon > 0.0)) throw ContractError("ext_sample_path: horizon > 0");
  check_floor(floor);
  StepPath path{floor, {}};
  double time = 0.0, state = floor;
  for (std::size_t n = 0; n < kArrivalCap; ++n) {
    chain_step(time, state, rng);
    if (time > horizon) return path;
    path.steps.push_back({time, state});
  }
  throw NumericError("ext_sample_path: arrival cap exceeded");
}

StepPath ext_sample_path_to_level(double level, double floor,
                                  UniformSource& rng) {
  check_floor(floor);
  StepPath path{floor, {}};
  double time = 0.0, state = floor;
  for (std::size_t n = 0; n < kArrivalCap && state <= level; ++n) {
    chain_step(time, state, rng);
    path.steps.push_back({time, state});
  }
  if (state <= level) {
    throw NumericError("ext_sample_path_to_level: arrival cap exceeded");
  }
  return path;
}

PrePostJump ext_sample_pre_post(double u, UniformSource& rng) {
  if (!(u > 0.0)) throw ContractError("ext_sample_pre_post: u must be > 0");
  const double crossing_time = rng_exponential(rng, u);
  const double void_exposure = rng_exponential(rng, 1.0);
  const double w = rng.uniform();
  // P{pre <= x | T} = exp(-T (1/x - 1/u)) inverted at an Exp(1) level.
  return {1.0 / (1.0 / u + void_exposure / crossing_time), u / w};
}

PrePostJump ext_scan_pre_post(double u, double floor, UniformSource& rng) {
  if (!(u > floor)) throw ContractError("ext_scan_pre_post: need u > floor");
  const StepPath path = ext_sample_path_to_level(u, floor, rng);
  const double post = path.steps.back().value;
  const double pre = path.steps.size() >= 2
                         ? path.steps[path.steps.size() - 2].value
                         : path.initial;
  return {pre, post};
}

double ext_joint_cdf_pre_post(double x1, double x2) {
  if (!(x1 > 0.0 && x1 < 1.0 && x2 > 1.0)) {
    throw ContractError("ext_joint_cdf_pre_post: need 0 < x1 < 1 < x2");
  }
  return x1 * (1.0 - 1.0 / x2);
}

double ext_inverse_max_jump(const StepPath& path, double level) {
  const auto& s = path.steps;
  if (s.empty() || !(s.back().value > level)) {
    throw ContractError("ext_inverse_max_jump: path must cross the level");
  }
  // m^<- jumps at each record value r_j by the holding time of that record.
  double best = 0.0;
  for (std::size_t j = 0; j + 1 < s.size() && s[j].value <= level; ++j) {
    best = std::max(best, s[j + 1].time - s[j].time);
  }
  return best;
}

}  // namespace slowshot
