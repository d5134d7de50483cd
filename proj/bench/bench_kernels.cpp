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

// Serial reference against the OpenMP replica loop on the hot batch kernels.
// Arg(0) is the serial path; Arg(k > 0) runs the parallel path on k threads.

#include <benchmark/benchmark.h>

#include <vector>

#include "slowshot/kernels.hpp"

namespace {

using namespace slowshot;

ReplicaPlan plan_for(const benchmark::State& state, const char* label,
                     std::size_t replicas) {
  const int threads = static_cast<int>(state.range(0));
  return {42, label, replicas, threads,
          threads == 0 ? Exec::kSerial : Exec::kParallel};
}

void BM_ScaledNuFdd(benchmark::State& state) {
  const SlowVaryFn L = SlowVaryFn::log_pow(1.0);
  const std::vector<double> grid{0.5, 1.0, 2.0};
  const ReplicaPlan plan = plan_for(state, kWalkLabel, 256);
  for (auto _ : state) {
    benchmark::DoNotOptimize(batch_scaled_nu_fdd(L, 1e3, grid, plan));
  }
  state.SetItemsProcessed(state.iterations() * plan.replicas);
}

void BM_ShotNoise(benchmark::State& state) {
  const SlowVaryFn L = SlowVaryFn::log_pow(1.0);
  const std::vector<double> grid{0.5, 1.0, 2.0};
  const ReplicaPlan plan = plan_for(state, kWalkLabel, 128);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        batch_scaled_shot_noise(L, ShotShape::lpow(1.0), 1e3, grid, plan));
  }
  state.SetItemsProcessed(state.iterations() * plan.replicas);
}

void BM_InverseFdd(benchmark::State& state) {
  const std::vector<double> grid{0.5, 1.0, 2.0};
  const ReplicaPlan plan = plan_for(state, kLimitLabel, 100000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(batch_inverse_fdd(grid, plan));
  }
  state.SetItemsProcessed(state.iterations() * plan.replicas);
}

void BM_ScanPrePost(benchmark::State& state) {
  const ReplicaPlan plan = plan_for(state, "scan-oracle", 20000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(batch_scan_pre_post(1.0, 1e-4, plan));
  }
  state.SetItemsProcessed(state.iterations() * plan.replicas);
}

void thread_args(benchmark::internal::Benchmark* b) {
  b->Arg(0);
  for (int t = 1; t <= default_thread_count(); t *= 2) b->Arg(t);
  b->Unit(benchmark::kMillisecond)->UseRealTime();
}

BENCHMARK(BM_ScaledNuFdd)->Apply(thread_args);
BENCHMARK(BM_ShotNoise)->Apply(thread_args);
BENCHMARK(BM_InverseFdd)->Apply(thread_args);
BENCHMARK(BM_ScanPrePost)->Apply(thread_args);

}  // namespace

BENCHMARK_MAIN();
