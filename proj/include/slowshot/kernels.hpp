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

#ifndef SLOWSHOT_KERNELS_HPP_
#define SLOWSHOT_KERNELS_HPP_

#include <cstdint>
#include <exception>
#include <span>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "slowshot/extremal.hpp"
#include "slowshot/renewal.hpp"
#include "slowshot/rng.hpp"
#include "slowshot/slowvary.hpp"

namespace slowshot {

// Stream labels. Renewal experiments share one walk label so that a given
// (seed, replica) drives the same walk in every experiment.
inline constexpr const char* kWalkLabel = "renewal-walk";
inline constexpr const char* kLimitLabel = "extremal-limit";

enum class Exec { kSerial, kParallel };

struct ReplicaPlan {
  std::uint64_t seed = 42;
  std::string label;
  std::size_t replicas = 0;
  int threads = 0;  // <= 0: all available
  Exec exec = Exec::kParallel;
};

int default_thread_count();

/// out[r] = fn(stream(seed, label, r), r). Serial reference loop.
template <typename T, typename Fn>
std::vector<T> map_replicas_serial(const ReplicaPlan& plan, Fn&& fn) {
  std::vector<T> out(plan.replicas);
  for (std::size_t r = 0; r < plan.replicas; ++r) {
    RngStream stream(plan.seed, plan.label, static_cast<std::uint32_t>(r));
    out[r] = fn(stream, r);
  }
  return out;
}

/// Same contract as map_replicas_serial; replicas run on an OpenMP team and
/// land in index order, so the result never depends on the thread count.
template <typename T, typename Fn>
std::vector<T> map_replicas_parallel(const ReplicaPlan& plan, Fn&& fn) {
  std::vector<T> out(plan.replicas);
  std::vector<std::exception_ptr> errors(plan.replicas);
  const long long n = static_cast<long long>(plan.replicas);
  const int threads =
      plan.threads > 0 ? plan.threads : default_thread_count();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
  for (long long r = 0; r < n; ++r) {
    try {
      RngStream stream(plan.seed, plan.label, static_cast<std::uint32_t>(r));
      out[r] = fn(stream, static_cast<std::size_t>(r));
    } catch (...) {
      errors[r] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

template <typename T, typename Fn>
std::vector<T> map_replicas(const ReplicaPlan& plan, Fn&& fn) {
  if (plan.exec == Exec::kSerial) {
    return map_replicas_serial<T>(plan, std::forward<Fn>(fn));
  }
  return map_replicas_parallel<T>(plan, std::forward<Fn>(fn));
}

// Batch kernels used by the experiments. Rows are replicas.

std::vector<std::vector<double>> batch_scaled_nu_fdd(
    const SlowVaryFn& L, double tau, std::span<const double> u_grid,
    const ReplicaPlan& plan);

std::vector<std::vector<double>> batch_scaled_shot_noise(
    const SlowVaryFn& L, const ShotShape& h, double tau,
    std::span<const double> u_grid, const ReplicaPlan& plan);

std::vector<RenewalCrossing> batch_crossings(const SlowVaryFn& L, LogNum t,
                                             const ReplicaPlan& plan);

// L(S_n) / n.
std::vector<double> batch_darling(const SlowVaryFn& L, std::uint64_t n,
                                  const ReplicaPlan& plan);

std::vector<std::vector<double>> batch_inverse_fdd(
    std::span<const double> u_grid, const ReplicaPlan& plan);

std::vector<PrePostJump> batch_pre_post(double u, const ReplicaPlan& plan);

std::vector<PrePostJump> batch_scan_pre_post(double u, double floor,
                                             const ReplicaPlan& plan);

}  // namespace slowshot

#endif  // SLOWSHOT_KERNELS_HPP_
