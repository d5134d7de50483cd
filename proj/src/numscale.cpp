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

#include "slowshot/numscale.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "slowshot/errors.hpp"

namespace slowshot {

LogNum LogNum::from_value(double value) {
  if (!(value >= 0.0)) {
    throw ContractError("LogNum::from_value: negative or NaN value");
  }
  if (value == 0.0) return zero();
  return from_log(std::log(value));
}

double LogNum::value() const { return std::exp(log_); }

LogNum lognum_add(LogNum a, LogNum b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const double hi = std::max(a.log(), b.log());
  const double lo = std::min(a.log(), b.log());
  if (std::isinf(hi)) return LogNum::infinity();
  return LogNum::from_log(hi + std::log1p(std::exp(lo - hi)));
}

LogNum lognum_sub(LogNum a, LogNum b) {
  if (a < b) throw ContractError("lognum_sub: minuend smaller than subtrahend");
  if (b.is_zero()) return a;
  if (a == b) return LogNum::zero();
  const double d = b.log() - a.log();  // < 0
  // log(1 - e^d): expm1 form near 0, log1p form for very negative d.
  const double tail =
      d > -M_LN2 ? std::log(-std::expm1(d)) : std::log1p(-std::exp(d));
  return LogNum::from_log(a.log() + tail);
}

std::partial_ordering lognum_cmp(LogNum a, LogNum b) { return a <=> b; }

std::string to_string(LogNum x) {
  char buf[64];
  if (x.is_zero()) return "0";
  if (std::fabs(x.log()) <= 700.0) {
    std::snprintf(buf, sizeof buf, "%.17g", x.value());
  } else {
    std::snprintf(buf, sizeof buf, "log:%.17g", x.log());
  }
  return buf;
}

LogNum lognum_parse(const std::string& text) {
  try {
    std::size_t used = 0;
    if (text.rfind("log:", 0) == 0) {
      const std::string body = text.substr(4);
      const double lv = std::stod(body, &used);
      if (used != body.size()) throw ConfigError("trailing characters");
      return LogNum::from_log(lv);
    }
    const double v = std::stod(text, &used);
    if (used != text.size() || v < 0.0) throw ConfigError("bad value");
    return LogNum::from_value(v);
  } catch (const std::logic_error&) {
    throw ConfigError("cannot parse LogNum from '" + text + "'");
  } catch (const ConfigError&) {
    throw ConfigError("cannot parse LogNum from '" + text + "'");
  }
}

}  // namespace slowshot
