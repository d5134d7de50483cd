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

#ifndef SLOWSHOT_RENEWAL_HPP_
#define SLOWSHOT_RENEWAL_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "slowshot/numscale.hpp"
#include "slowshot/rng.hpp"
#include "slowshot/slowvary.hpp"

namespace slowshot {

/// Response function h of the shot noise.
///
/// kLPow is h(x) = L(x)^alpha, so h(L^{-1}(y)) = y^alpha exactly. For
/// alpha < 0 the base is clamped to max(L(x), 1), which keeps h locally
/// bounded near 0 and leaves h(L^{-1}(y)) = y^alpha for y >= 1.
struct ShotShape {
  enum class Form { kLPow, kUnit };
  double alpha = 1.0;
  Form form = Form::kLPow;

  static ShotShape lpow(double alpha) { return {alpha, Form::kLPow}; }
  static ShotShape unit() { return {0.0, Form::kUnit}; }

  // h as a function of the already-evaluated L(x).
  double of_l(double l_value) const;
  double operator()(const SlowVaryFn& L, LogNum x) const { return of_l(L(x)); }
};

struct RenewalCrossing {
  std::uint64_t nu = 0;  // nu(t) = inf{k >= 1 : S_k > t}
  LogNum last;           // S_{nu - 1} <= t
  LogNum first_exceed;   // S_nu > t
};

inline constexpr std::uint64_t kDefaultStepCap = 1'000'000'000;

/// xi = L^{-1}(1/U): exact tail P{xi > x} = min(1, 1/L(x)).
LogNum rw_sample_increment(const SlowVaryFn& L, UniformSource& rng);

RenewalCrossing rw_first_passage(const SlowVaryFn& L, LogNum t,
                                 UniformSource& rng,
                                 std::uint64_t step_cap = kDefaultStepCap);

/// (nu(L^{-1}(tau u_i)) / tau)_i from a single walk.
std::vector<double> rw_scaled_nu_fdd(const SlowVaryFn& L, double tau,
                                     std::span<const double> u_grid,
                                     UniformSource& rng,
                                     std::uint64_t step_cap = kDefaultStepCap);

/// Y(t) = sum_{k < nu(t)} h(t - S_k).
double rw_shot_noise(const SlowVaryFn& L, const ShotShape& h, LogNum t,
                     UniformSource& rng,
                     std::uint64_t step_cap = kDefaultStepCap);

/// (Y(L^{-1}(tau u_i)) / (tau h(L^{-1}(tau))))_i from a single walk.
std::vector<double> rw_scaled_shot_noise_fdd(
    const SlowVaryFn& L, const ShotShape& h, double tau,
    std::span<const double> u_grid, UniformSource& rng,
    std::uint64_t step_cap = kDefaultStepCap);

/// Walk epochs S_0 = 0 < S_1 < ... up to and including the first one above t.
std::vector<LogNum> rw_epochs_until(const SlowVaryFn& L, LogNum t,
                                    UniformSource& rng,
                                    std::uint64_t step_cap = kDefaultStepCap);

/// S_n for a fixed number of steps.
LogNum rw_partial_sum(const SlowVaryFn& L, std::uint64_t n, UniformSource& rng);

/// Times of returns to the origin of a simple symmetric walk on Z^2 within
/// n_steps steps.
std::vector<std::uint64_t> rw_srw2d_returns(std::uint64_t n_steps,
                                            UniformSource& rng);

}  // namespace slowshot

#endif  // SLOWSHOT_RENEWAL_HPP_
