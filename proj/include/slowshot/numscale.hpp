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

#ifndef SLOWSHOT_NUMSCALE_HPP_
#define SLOWSHOT_NUMSCALE_HPP_

#include <compare>
#include <limits>
#include <string>

namespace slowshot {

/// A nonnegative extended real stored as its natural logarithm.
///
/// Renewal epochs under slowly varying tails grow like exp(tau) with tau in
/// the thousands, so every physical time in the library lives in this type.
/// Zero is represented exactly by a log value of -infinity.
class LogNum {
 public:
  constexpr LogNum() = default;

  static constexpr LogNum zero() { return LogNum{}; }
  // Stands for values past the largest finite log; absorbing under addition.
  static constexpr LogNum infinity() {
    return from_log(std::numeric_limits<double>::infinity());
  }
  static constexpr LogNum from_log(double log_value) {
    LogNum r;
    r.log_ = log_value;
    return r;
  }
  // Throws ContractError for negative or NaN input.
  static LogNum from_value(double value);

  constexpr double log() const { return log_; }
  // exp(log); overflows to +inf for log > ~709.78.
  double value() const;
  constexpr bool is_zero() const {
    return log_ == -std::numeric_limits<double>::infinity();
  }

  friend constexpr std::partial_ordering operator<=>(const LogNum& a,
                                                     const LogNum& b) {
    return a.log_ <=> b.log_;
  }
  friend constexpr bool operator==(const LogNum& a, const LogNum& b) {
    return a.log_ == b.log_;
  }

  // Multiplication and division are exact additions in log space.
  friend constexpr LogNum operator*(const LogNum& a, const LogNum& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return from_log(a.log_ + b.log_);
  }

 private:
  double log_ = -std::numeric_limits<double>::infinity();
};

/// value(a) + value(b) via max + log1p(exp(min - max)).
LogNum lognum_add(LogNum a, LogNum b);

/// value(a) - value(b). Requires a >= b; a < b throws ContractError.
LogNum lognum_sub(LogNum a, LogNum b);

/// Three-way comparison of represented values.
std::partial_ordering lognum_cmp(LogNum a, LogNum b);

inline LogNum operator+(LogNum a, LogNum b) { return lognum_add(a, b); }
inline LogNum operator-(LogNum a, LogNum b) { return lognum_sub(a, b); }

/// "log:<log_value>" for |log_value| > 700, plain decimal value otherwise.
std::string to_string(LogNum x);

/// Inverse of to_string. Throws ConfigError on malformed text.
LogNum lognum_parse(const std::string& text);

}  // namespace slowshot

#endif  // SLOWSHOT_NUMSCALE_HPP_
