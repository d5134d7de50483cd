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

#ifndef SLOWSHOT_RNG_HPP_
#define SLOWSHOT_RNG_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slowshot {

/// Source of uniform(0,1) variates. Every sampler in the library draws
/// through this interface so hand-computed examples can script the draws.
class UniformSource {
 public:
  virtual ~UniformSource() = default;
  // Strictly inside (0, 1).
  virtual double uniform() = 0;
};

/// Philox4x32-10 block function (Salmon et al., Random123).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key);

/// 32-bit FNV-1a, used to turn experiment labels into stream ids.
std::uint32_t label_hash(std::string_view label);

/// Counter-based stream keyed by (seed, label, replica).
///
/// Draw i of a stream is a pure function of (seed, label, replica, i), so
/// replicas can be generated in any order on any number of workers.
class RngStream final : public UniformSource {
 public:
  RngStream(std::uint64_t seed, std::string_view label, std::uint32_t replica);

  // Child stream: same seed, new (label, replica) path.
  RngStream derive(std::string_view label, std::uint32_t replica) const;

  double uniform() override;
  std::uint64_t next_u64();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t path_id() const { return path_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t path_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int cached_ = 0;  // unread 64-bit halves of block_
};

/// Replays a fixed uniform sequence; throws NumericError when exhausted.
class ScriptedStream final : public UniformSource {
 public:
  explicit ScriptedStream(std::vector<double> draws, bool cycle = false);
  double uniform() override;
  std::size_t consumed() const { return pos_; }

 private:
  std::vector<double> draws_;
  bool cycle_;
  std::size_t pos_ = 0;
};

/// -mean * log(U).
double rng_exponential(UniformSource& s, double mean);

inline double rng_uniform(UniformSource& s) { return s.uniform(); }

/// Human-readable derivation rule recorded in reports.
std::string rng_derivation_rule();

}  // namespace slowshot

#endif  // SLOWSHOT_RNG_HPP_
