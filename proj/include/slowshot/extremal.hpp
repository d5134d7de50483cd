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

#ifndef SLOWSHOT_EXTREMAL_HPP_
#define SLOWSHOT_EXTREMAL_HPP_

#include <span>
#include <vector>

#include "slowshot/rng.hpp"

namespace slowshot {

// Samplers for the Poisson random measure on [0, inf) x (0, inf] with
// intensity dt x y^-2 dy, its extremal process m(u) = max_{t_k <= u} y_k and
// the first-passage inverse m^<-(u) = inf{s : m(s) > u}.

struct MarkedPoint {
  double t = 0.0;
  double y = 0.0;
};

/// Right-continuous, piecewise-constant path: value() is `initial` before the
/// first step time and steps[i].value on [steps[i].time, steps[i+1].time).
struct StepPath {
  struct Step {
    double time;
    double value;
  };
  double initial = 0.0;
  std::vector<Step> steps;

  double value_at(double u) const;
};

struct PrePostJump {
  double pre = 0.0;   // m(m^<-(u)-)
  double post = 0.0;  // m(m^<-(u))
};

/// One exact joint draw of (m^<-(u_1), ..., m^<-(u_n)) for 0 < u_1 < ... < u_n.
std::vector<double> ext_sample_inverse_fdd(std::span<const double> u_grid,
                                           UniformSource& rng);

/// Path of max(m(u), floor) on [0, horizon] as the record jump chain.
StepPath ext_sample_path(double horizon, double floor, UniformSource& rng);

/// Same chain, run until the first record strictly above `level`.
StepPath ext_sample_path_to_level(double level, double floor,
                                  UniformSource& rng);

/// Exact O(1) draw of the pre/post-jump pair at level u.
PrePostJump ext_sample_pre_post(double u, UniformSource& rng);

/// Path-scanning oracle for ext_sample_pre_post: runs the chain from `floor`
/// until the first record above u. Biased only on {pre < floor}.
PrePostJump ext_scan_pre_post(double u, double floor, UniformSource& rng);

/// x1 (1 - 1/x2): joint CDF of (pre, post) at level 1, for 0 < x1 < 1 < x2.
double ext_joint_cdf_pre_post(double x1, double x2);

/// sup_{v in (floor, level]} |m^<-(v) - m^<-(v-)| read off a record path that
/// crosses `level`. Jumps at levels below the path floor are not visible.
double ext_inverse_max_jump(const StepPath& path, double level);

}  // namespace slowshot

#endif  // SLOWSHOT_EXTREMAL_HPP_
