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

#ifndef SLOWSHOT_SLOWVARY_HPP_
#define SLOWSHOT_SLOWVARY_HPP_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "slowshot/numscale.hpp"

namespace slowshot {

/// The epsilon(u) of the representation L(x) = c exp(int_0^x eps(u)/u du).
struct EpsilonPreset {
  std::string name;
  std::function<double(double)> eps;  // u >= 0 -> eps(u) >= 0
  std::vector<double> breakpoints;    // u-locations where eps may jump
  // Optional eps(e^s) written in s = log u, for arguments past double range.
  std::function<double(double)> eps_log;
};

/// Named presets: "inv_log", "inv_log_gap", "flat_head".
///   inv_log:     u on [0,1], 1/ln(e+u) on (1, inf)
///   inv_log_gap: inv_log, but 0 on (2, 5)
///   flat_head:   0 on [0,1], 1/ln(e+u) on (1, inf)
EpsilonPreset epsilon_preset(const std::string& name);

struct RepresentationSpec {
  double c = 1.0;
  EpsilonPreset epsilon = epsilon_preset("inv_log");
  double quad_tol = 1e-8;
  // Tabulation range in s = log u is [0, cutoff_log].
  double cutoff_log = 1e6;
  // Knot spacing in s below s = 64; geometric (ratio 1.01) above.
  double knot_step = 0.125;
  // Lower truncation of the integrals over (0, 1] in s = log u.
  double head_log = -50.0;
};

/// Parses the key=value spec file format (c, epsilon, quad_tol, cutoff_log,
/// knot_step). Unknown keys are a ConfigError.
RepresentationSpec parse_representation_spec(const std::string& text);

namespace detail {
struct RepresentationTable;
}

/// A strictly increasing, continuous, slowly varying L with L(0) = 0 and
/// L(inf) = inf, together with its inverse.
class SlowVaryFn {
 public:
  enum class Kind { kLogPow, kLogLog, kRepresentation };

  static SlowVaryFn log_pow(double beta);
  static SlowVaryFn log_log();
  static SlowVaryFn from_representation(const RepresentationSpec& spec);

  // L(x). Representation-built L throws NumericError past the cutoff.
  double operator()(LogNum x) const;
  // L^{-1}(y) for y >= 0.
  LogNum inverse(double y) const;
  // Same, but returns LogNum::infinity() where inverse() would report overflow.
  LogNum inverse_or_infinite(double y) const;

  Kind kind() const { return kind_; }
  double beta() const { return beta_; }
  std::string describe() const;

  // Representation-built only (ContractError otherwise).
  double b_constant() const;
  // int_0^x eps_1(u)/u du.
  double log_integral(LogNum x) const;
  // int_0^x eps(u)/u du for the original epsilon.
  double original_log_integral(LogNum x) const;
  // c * exp(original_log_integral(x)): the L the regularization replaces.
  double original(LogNum x) const;
  const std::vector<std::string>& warnings() const;

 private:
  SlowVaryFn(Kind kind, double beta) : kind_(kind), beta_(beta) {}
  Kind kind_;
  double beta_ = 1.0;
  std::shared_ptr<const detail::RepresentationTable> table_;
};

inline double sv_eval(const SlowVaryFn& L, LogNum x) { return L(x); }
inline LogNum sv_inverse(const SlowVaryFn& L, double y) { return L.inverse(y); }
inline SlowVaryFn sv_build_from_representation(const RepresentationSpec& s) {
  return SlowVaryFn::from_representation(s);
}

/// tag "logpow" (params = {beta}) or "loglog" (params empty).
SlowVaryFn sv_canonical(const std::string& tag,
                        const std::vector<double>& params = {});

/// "logpow:<beta>", "loglog", or "repr:<path>".
SlowVaryFn parse_slowvary(const std::string& spec);

/// log(1 + x) from the log-scale representation of x.
double log1p_lognum(LogNum x);
/// log(e^s - 1) for s > 0, i.e. the log of expm1(s).
double log_expm1(double s);

}  // namespace slowshot

#endif  // SLOWSHOT_SLOWVARY_HPP_
