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

#ifndef SLOWSHOT_EXPERIMENTS_INTERNAL_HPP_
#define SLOWSHOT_EXPERIMENTS_INTERNAL_HPP_

#include <chrono>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "slowshot/experiments.hpp"

namespace slowshot::internal {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

nlohmann::json summarize(std::span<const double> sample);

ReplicaPlan make_plan(const ExperimentConfig& cfg, const std::string& label,
                      std::size_t replicas = 0);

// KS distance threshold for pre-asymptotic renewal samples; loglog and
// representation-built L get a wider default.
double renewal_ks_threshold(const ExperimentConfig& cfg, const SlowVaryFn& L);

// Parses the L spec and checks that L^{-1}(tau * u_max) fits in a LogNum.
SlowVaryFn load_L(const ExperimentConfig& cfg, double max_scale);

std::string fmt(double v);

}  // namespace slowshot::internal

#endif  // SLOWSHOT_EXPERIMENTS_INTERNAL_HPP_
