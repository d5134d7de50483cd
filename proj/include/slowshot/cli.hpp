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

#ifndef SLOWSHOT_CLI_HPP_
#define SLOWSHOT_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "slowshot/experiments.hpp"

namespace slowshot {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Applies key=value lines (tau, replicas, seed, u, alpha, L, out, threads,
/// experiment, tol.<key>, param.<key>) to cfg. Returns the experiment name if
/// the text sets one. Throws ConfigError.
std::string apply_config_text(ExperimentConfig& cfg, const std::string& text);

/// Comma-separated list of positive reals.
std::vector<double> parse_u_grid(const std::string& text);

/// Entry point: `run | list | describe`. Exit 0 on pass or demo-grade, 1 on
/// a failed verdict, 2 on usage or configuration errors.
int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace slowshot

#endif  // SLOWSHOT_CLI_HPP_
