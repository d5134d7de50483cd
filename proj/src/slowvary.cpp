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

#include "slowshot/slowvary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <fstream>
#include <sstream>

#include "slowshot/errors.hpp"
#include "slowshot/quadrature.hpp"

namespace slowshot {

double log1p_lognum(LogNum x) {
  if (x.is_zero()) return 0.0;
  const double lx = x.log();
  return lx > 0.0 ? lx + std::log1p(std::exp(-lx)) : std::log1p(std::exp(lx));
}

double log_expm1(double s) {
  // e^-s is below half an ulp of s from here on.
  if (s > 40.0) return s;
  if (s > 1.0) return s + std::log(-std::expm1(-s));
  return std::log(std::expm1(s));
}

namespace {

double inv_log_tail(double u) { return 1.0 / std::log(M_E + u); }

// 1/ln(e + e^s) for s > 0 without forming e^s.
double inv_log_tail_s(double s) { return 1.0 / (s + std::log1p(std::exp(1.0 - s))); }

}  // namespace

EpsilonPreset epsilon_preset(const std::string& name) {
  if (name == "inv_log") {
    return {name, [](double u) { return u <= 1.0 ? u : inv_log_tail(u); },
            {1.0},
            [](double s) { return s <= 0.0 ? std::exp(s) : inv_log_tail_s(s); }};
  }
  if (name == "inv_log_gap") {
    return {name,
            [](double u) {
              if (u <= 1.0) return u;
              if (u > 2.0 && u < 5.0) return 0.0;
              return inv_log_tail(u);
            },
            {1.0, 2.0, 5.0},
            [](double s) {
              if (s <= 0.0) return std::exp(s);
              if (s > std::log(2.0) && s < std::log(5.0)) return 0.0;
              return inv_log_tail_s(s);
            }};
  }
  if (name == "flat_head") {
    return {name, [](double u) { return u <= 1.0 ? 0.0 : inv_log_tail(u); },
            {1.0},
            [](double s) { return s <= 0.0 ? 0.0 : inv_log_tail_s(s); }};
  }
  throw ConfigError("unknown epsilon preset '" + name + "'");
}

RepresentationSpec parse_representation_spec(const std::string& text) {
  RepresentationSpec spec;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("representation spec: expected key=value, got '" +
                        line + "'");
    }
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    val.erase(0, val.find_first_not_of(" \t"));
    try {
      if (key == "c") {
        spec.c = std::stod(val);
      } else if (key == "epsilon") {
        spec.epsilon = epsilon_preset(val);
      } else if (key == "quad_tol") {
        spec.quad_tol = std::stod(val);
      } else if (key == "cutoff_log") {
        spec.cutoff_log = std::stod(val);
      } else if (key == "knot_step") {
        spec.knot_step = std::stod(val);
      } else {
        throw ConfigError("representation spec: unknown key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw ConfigError("representation spec: bad value for '" + key + "'");
    }
  }
  return spec;
}

namespace detail {

struct RepresentationTable {
  RepresentationSpec spec;
  double b = 0.0;
  double b_tail_bound = 0.0;
  double log_ceb = 0.0;  // log(c e^b)
  double head = 0.0;     // int_0^1 eps(u)/u du
  double seg_tol = 0.0;
  std::vector<double> knots;  // in s = log u, knots[0] = 0
  std::vector<double> cum1;   // int_0^{knot} eps_1(e^s) ds
  std::vector<double> cum0;   // same for eps
  std::vector<std::string> warnings;

  // eps and eps_1 at u = e^s.
  double eps_at(double s) const {
    return spec.epsilon.eps_log ? spec.epsilon.eps_log(s)
                                : spec.epsilon.eps(std::exp(s));
  }
  double eps1_at(double s) const {
    if (s <= 0.0) return std::exp(s);
    const double e = eps_at(s);
    return e > 0.0 ? e : std::exp(-s);
  }

  std::size_t segment(double s) const {
    auto it = std::upper_bound(knots.begin(), knots.end(), s);
    return static_cast<std::size_t>(it - knots.begin()) - 1;
  }

  double partial1(std::size_t j, double s) const {
    return adaptive_simpson([this](double r) { return eps1_at(r); },
                            knots[j], s, seg_tol);
  }
  double partial0(std::size_t j, double s) const {
    return adaptive_simpson([this](double r) { return eps_at(r); },
                            knots[j], s, seg_tol);
  }

  void check_range(double s) const {
    if (s > knots.back()) {
      throw NumericError("representation L: argument beyond quadrature cutoff");
    }
  }

  // I_1(x) = int_0^x eps_1(u)/u du.
  double log_integral(LogNum x) const {
    if (x.is_zero()) return 0.0;
    const double s = x.log();
    if (s <= 0.0) return x.value();
    check_range(s);
    const std::size_t j = segment(s);
    return 1.0 + cum1[j] + partial1(j, s);
  }

  double original_log_integral(LogNum x) const {
    if (x.is_zero()) return 0.0;
    const double s = x.log();
    if (s <= 0.0) {
      if (s <= spec.head_log) return 0.0;
      return adaptive_simpson([this](double r) { return eps_at(r); },
                              spec.head_log, s, seg_tol);
    }
    check_range(s);
    const std::size_t j = segment(s);
    return head + cum0[j] + partial0(j, s);
  }

  double eval(LogNum x) const {
    return std::exp(log_ceb) * std::expm1(log_integral(x));
  }

  LogNum inverse(double y) const {
    if (y == 0.0) return LogNum::zero();
    const double target = std::log1p(y / std::exp(log_ceb));
    if (target <= 1.0) return LogNum::from_value(target);
    const double rest = target - 1.0;
    if (rest > cum1.back()) {
      throw NumericError("representation L: inverse beyond quadrature cutoff");
    }
    auto it = std::upper_bound(cum1.begin(), cum1.end(), rest);
    const std::size_t j = std::min<std::size_t>(
        static_cast<std::size_t>(it - cum1.begin()) - 1, knots.size() - 2);
    double lo = knots[j], hi = knots[j + 1];
    const double need = rest - cum1[j];
    double s = 0.5 * (lo + hi);
    // Safeguarded Newton on F(s) = int_{knot_j}^s eps_1 - need.
    for (int iter = 0; iter < 200; ++iter) {
      const double f = partial1(j, s) - need;
      if (f == 0.0) return LogNum::from_log(s);
      if (f > 0.0) {
        hi = s;
      } else {
        lo = s;
      }
      const double slope = eps1_at(s);
      double next = s - f / slope;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::fabs(next - s) <= 4.0 * 2.2e-16 * std::max(1.0, std::fabs(s)) ||
          hi - lo <= 4.0 * 2.2e-16 * std::max(1.0, std::fabs(s))) {
        return LogNum::from_log(next);
      }
      s = next;
    }
    throw NumericError("representation L: inversion did not converge");
  }
};

}  // namespace detail

SlowVaryFn SlowVaryFn::log_pow(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ConfigError("logpow: beta must be positive and finite");
  }
  return SlowVaryFn(Kind::kLogPow, beta);
}

SlowVaryFn SlowVaryFn::log_log() { return SlowVaryFn(Kind::kLogLog, 1.0); }

SlowVaryFn SlowVaryFn::from_representation(const RepresentationSpec& spec) {
  if (!(spec.c > 0.0) || !std::isfinite(spec.c)) {
    throw ContractError("representation: c must be positive");
  }
  if (!(spec.quad_tol > 0.0) || !(spec.cutoff_log > 1.0) ||
      !(spec.knot_step > 0.0) || !spec.epsilon.eps) {
    throw ContractError("representation: invalid quadrature controls");
  }
  auto t = std::make_shared<detail::RepresentationTable>();
  t->spec = spec;
  t->seg_tol = spec.quad_tol * 1e-4;
  // Without a log-argument form, eps(e^s) is only defined while e^s is finite.
  const double max_log_u = std::log(std::numeric_limits<double>::max());
  if (!spec.epsilon.eps_log && spec.cutoff_log > max_log_u) {
    t->spec.cutoff_log = max_log_u;
    t->warnings.push_back("epsilon has no log-argument form; cutoff lowered to " +
                          std::to_string(max_log_u));
  }
  const double cutoff = t->spec.cutoff_log;

  std::vector<double> knots;
  for (double s = 0.0; s < cutoff;) {
    knots.push_back(s);
    s += s < 64.0 ? spec.knot_step : 0.01 * s;
  }
  knots.push_back(cutoff);
  for (double bp : spec.epsilon.breakpoints) {
    if (bp > 1.0 && std::log(bp) < cutoff) knots.push_back(std::log(bp));
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  t->knots = std::move(knots);

  const auto eps_s = [&t](double r) {
    const double e = t->eps_at(r);
    if (e < 0.0 || std::isnan(e)) {
      throw ContractError("representation: epsilon must be nonnegative");
    }
    return e;
  };
  const auto eps1_s = [&t](double r) { return t->eps1_at(r); };
  const auto diff_s = [&t, &eps_s](double r) {
    return eps_s(r) - t->eps1_at(r);
  };

  // (0, 1]: eps_1(u) = u integrates to exactly 1.
  t->head = adaptive_simpson(eps_s, spec.head_log, 0.0, t->seg_tol);
  double b = t->head - 1.0;

  const std::size_t n = t->knots.size();
  t->cum1.assign(n, 0.0);
  t->cum0.assign(n, 0.0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double a = t->knots[j], z = t->knots[j + 1];
    t->cum1[j + 1] = t->cum1[j] + adaptive_simpson(eps1_s, a, z, t->seg_tol);
    t->cum0[j + 1] = t->cum0[j] + adaptive_simpson(eps_s, a, z, t->seg_tol);
    b += adaptive_simpson(diff_s, a, z, t->seg_tol);
  }
  t->b = b;
  // Past the cutoff eps - eps_1 is either 0 or -1/u: |tail| <= 1/cutoff.
  t->b_tail_bound = std::exp(-cutoff);
  t->log_ceb = std::log(spec.c) + b;

  // Divergence of int eps_1/u: the upper half of the range should still add
  // a visible share of the total.
  const double total = 1.0 + t->cum1.back();
  const double upper_half =
      t->cum1.back() - t->cum1[t->segment(0.5 * cutoff)];
  if (upper_half < 1e-3 * total) {
    t->warnings.push_back(
        "int eps_1(u)/u du appears to converge before the cutoff; L_1 may be "
        "bounded");
  }

  SlowVaryFn fn(Kind::kRepresentation, 1.0);
  fn.table_ = std::move(t);
  return fn;
}

double SlowVaryFn::operator()(LogNum x) const {
  switch (kind_) {
    case Kind::kLogPow:
      return beta_ == 1.0 ? log1p_lognum(x) : std::pow(log1p_lognum(x), beta_);
    case Kind::kLogLog:
      return std::log1p(log1p_lognum(x));
    case Kind::kRepresentation:
      return table_->eval(x);
  }
  return 0.0;
}

LogNum SlowVaryFn::inverse(double y) const {
  const LogNum x = inverse_or_infinite(y);
  if (std::isinf(x.log()) && x.log() > 0.0) {
    throw NumericError("sv_inverse: L^{-1}(y) exceeds the LogNum range");
  }
  return x;
}

LogNum SlowVaryFn::inverse_or_infinite(double y) const {
  if (!(y >= 0.0)) throw ContractError("sv_inverse: y must be >= 0");
  if (y == 0.0) return LogNum::zero();
  double a = 0.0;  // log(1 + x)
  switch (kind_) {
    case Kind::kLogPow:
      a = beta_ == 1.0 ? y : std::pow(y, 1.0 / beta_);
      break;
    case Kind::kLogLog:
      a = std::expm1(y);
      break;
    case Kind::kRepresentation:
      return table_->inverse(y);
  }
  if (!std::isfinite(a)) return LogNum::infinity();
  return LogNum::from_log(log_expm1(a));
}

std::string SlowVaryFn::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::kLogPow:
      out << "logpow:" << beta_;
      break;
    case Kind::kLogLog:
      out << "loglog";
      break;
    case Kind::kRepresentation:
      out << "repr:epsilon=" << table_->spec.epsilon.name
          << ",c=" << table_->spec.c;
      break;
  }
  return out.str();
}

double SlowVaryFn::b_constant() const {
  if (!table_) throw ContractError("b_constant: not representation-built");
  return table_->b;
}

double SlowVaryFn::log_integral(LogNum x) const {
  if (!table_) throw ContractError("log_integral: not representation-built");
  return table_->log_integral(x);
}

double SlowVaryFn::original_log_integral(LogNum x) const {
  if (!table_) {
    throw ContractError("original_log_integral: not representation-built");
  }
  return table_->original_log_integral(x);
}

double SlowVaryFn::original(LogNum x) const {
  return table_ ? table_->spec.c * std::exp(original_log_integral(x))
                : throw ContractError("original: not representation-built");
}

const std::vector<std::string>& SlowVaryFn::warnings() const {
  static const std::vector<std::string> none;
  return table_ ? table_->warnings : none;
}

SlowVaryFn sv_canonical(const std::string& tag,
                        const std::vector<double>& params) {
  if (tag == "logpow") {
    if (params.size() != 1) throw ConfigError("logpow needs one parameter");
    return SlowVaryFn::log_pow(params[0]);
  }
  if (tag == "loglog") {
    if (!params.empty()) throw ConfigError("loglog takes no parameters");
    return SlowVaryFn::log_log();
  }
  throw ConfigError("unknown slowly varying family '" + tag + "'");
}

SlowVaryFn parse_slowvary(const std::string& spec) {
  if (spec == "loglog") return SlowVaryFn::log_log();
  if (spec.rfind("logpow:", 0) == 0) {
    const std::string body = spec.substr(7);
    std::size_t used = 0;
    double beta = 0.0;
    try {
      beta = std::stod(body, &used);
    } catch (const std::logic_error&) {
      throw ConfigError("bad logpow exponent in '" + spec + "'");
    }
    if (used != body.size()) throw ConfigError("bad L spec '" + spec + "'");
    return SlowVaryFn::log_pow(beta);
  }
  if (spec.rfind("repr:", 0) == 0) {
    std::ifstream in(spec.substr(5));
    if (!in) throw ConfigError("cannot open representation spec " + spec.substr(5));
    std::stringstream buf;
    buf << in.rdbuf();
    return SlowVaryFn::from_representation(parse_representation_spec(buf.str()));
  }
  throw ConfigError("unknown L spec '" + spec + "'");
}

}  // namespace slowshot
