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

#include "slowshot/rng.hpp"

#include <cmath>

#include "slowshot/errors.hpp"

namespace slowshot {
namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

// 52 random bits mapped to the midpoints of a 2^-52 grid: never 0, never 1.
// With 53 bits the top midpoint 1 - 2^-54 would round up to 1.
inline double to_open_unit(std::uint64_t x) {
  return (static_cast<double>(x >> 12) + 0.5) * 0x1.0p-52;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

std::uint32_t label_hash(std::string_view label) {
  std::uint32_t h = 2166136261u;
  for (unsigned char c : label) {
    h ^= c;
    h *= 16777619u;
  }
  return h;
}

RngStream::RngStream(std::uint64_t seed, std::string_view label,
                     std::uint32_t replica)
    : seed_(seed),
      path_((static_cast<std::uint64_t>(label_hash(label)) << 32) | replica) {}

RngStream RngStream::derive(std::string_view label,
                            std::uint32_t replica) const {
  return RngStream(seed_, label, replica);
}

std::uint64_t RngStream::next_u64() {
  if (cached_ == 0) {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(counter_),
        static_cast<std::uint32_t>(counter_ >> 32),
        static_cast<std::uint32_t>(path_), static_cast<std::uint32_t>(path_ >> 32)};
    block_ = philox4x32_10(ctr, {static_cast<std::uint32_t>(seed_),
                                 static_cast<std::uint32_t>(seed_ >> 32)});
    ++counter_;
    cached_ = 2;
  }
  const int i = 2 - cached_;
  --cached_;
  return (static_cast<std::uint64_t>(block_[2 * i + 1]) << 32) | block_[2 * i];
}

double RngStream::uniform() { return to_open_unit(next_u64()); }

ScriptedStream::ScriptedStream(std::vector<double> draws, bool cycle)
    : draws_(std::move(draws)), cycle_(cycle) {
  for (double u : draws_) {
    if (!(u > 0.0 && u <= 1.0)) {
      throw ContractError("ScriptedStream: draws must lie in (0, 1]");
    }
  }
}

double ScriptedStream::uniform() {
  if (pos_ >= draws_.size()) {
    if (!cycle_ || draws_.empty()) {
      throw NumericError("ScriptedStream exhausted");
    }
    return draws_[pos_++ % draws_.size()];
  }
  return draws_[pos_++];
}

double rng_exponential(UniformSource& s, double mean) {
  if (!(mean > 0.0)) throw ContractError("rng_exponential: mean must be > 0");
  return -mean * std::log(s.uniform());
}

std::string rng_derivation_rule() {
  return "philox4x32-10; key=(seed lo32, seed hi32); "
         "counter=(draw lo32, draw hi32, replica, fnv1a32(label)); "
         "u=((x>>12)+0.5)*2^-52";
}

}  // namespace slowshot
