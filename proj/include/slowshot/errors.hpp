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

#ifndef SLOWSHOT_ERRORS_HPP_
#define SLOWSHOT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace slowshot {

// Violated precondition: the caller asked for something the math never needs.
class ContractError : public std::logic_error {
 public:
  explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

// Iteration budgets, quadrature or bisection that did not converge.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Bad user-facing configuration (CLI flags, config files, spec strings).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace slowshot

#endif  // SLOWSHOT_ERRORS_HPP_
