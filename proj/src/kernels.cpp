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

#include "slowshot/kernels.hpp"

#include <thread>

namespace slowshot {

int default_thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
#endif
}

std::vector<std::vector<double>> batch_scaled_nu_fdd(
    const SlowVaryFn& L, double tau, std::span<const double> u_grid,
    const ReplicaPlan& plan) {
  return map_replicas<std::vector<double>>(
      plan, [&](RngStream& s, std::size_t) {
        return rw_scaled_nu_fdd(L, tau, u_grid, s);
      });
}

std::vector<std::vector<double>> batch_scaled_shot_noise(
    const SlowVaryFn& L, const ShotShape& h, double tau,
    std::span<const double> u_grid, const ReplicaPlan& plan) {
  return map_replicas<std::vector<double>>(
      plan, [&](RngStream& s, std::size_t) {
        return rw_scaled_shot_noise_fdd(L, h, tau, u_grid, s);
      });
}

std::vector<RenewalCrossing> batch_crossings(const SlowVaryFn& L, LogNum t,
                                             const ReplicaPlan& plan) {
  return map_replicas<RenewalCrossing>(
      plan, [&](RngStream& s, std::size_t) { return rw_first_passage(L, t, s); });
}

std::vector<double> batch_darling(const SlowVaryFn& L, std::uint64_t n,
                                  const ReplicaPlan& plan) {
  return map_replicas<double>(plan, [&](RngStream& s, std::size_t) {
    return L(rw_partial_sum(L, n, s)) / static_cast<double>(n);
  });
}

std::vector<std::vector<double>> batch_inverse_fdd(
    std::span<const double> u_grid, const ReplicaPlan& plan) {
  return map_replicas<std::vector<double>>(
      plan,
      [&](RngStream& s, std::size_t) { return ext_sample_inverse_fdd(u_grid, s); });
}

std::vector<PrePostJump> batch_pre_post(double u, const ReplicaPlan& plan) {
  return map_replicas<PrePostJump>(
      plan, [&](RngStream& s, std::size_t) { return ext_sample_pre_post(u, s); });
}

std::vector<PrePostJump> batch_scan_pre_post(double u, double floor,
                                             const ReplicaPlan& plan) {
  return map_replicas<PrePostJump>(plan, [&](RngStream& s, std::size_t) {
    return ext_scan_pre_post(u, floor, s);
  });
}

}  // namespace slowshot
