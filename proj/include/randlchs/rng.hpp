// Copyright 2026 The randlchs Authors.
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

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "randlchs/types.hpp"

namespace randlchs {

/// SplitMix64 step; used to derive independent stream seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic stream seed for (master, index [, subindex]).
///
/// Streams derived for distinct indices are statistically independent, so work
/// items may be scheduled on any thread without affecting results.
inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t index,
                                   std::uint64_t subindex = 0) {
  std::uint64_t s = master;
  (void)splitmix64(s);
  s ^= 0x517cc1b727220a95ULL * (index + 1);
  (void)splitmix64(s);
  s ^= 0x2545f4914f6cdd1dULL * (subindex + 1);
  return splitmix64(s);
}

/// Counter-seeded generator with platform-pinned uniform/categorical draws.
///
/// All floating-point draws are built directly from mt19937_64 output words so
/// results do not depend on standard-library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform double in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform in (0, 1]; safe as a log() argument.
  double uniform_pos() { return 1.0 - uniform(); }

  /// Exponential variate with the given rate.
  double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

  /// Index i with probability (cdf[i] - cdf[i-1]) / cdf.back(); cdf must be
  /// non-decreasing with positive final value.
  std::size_t categorical(const std::vector<double>& cdf) {
    const double u = uniform() * cdf.back();
    std::size_t lo = 0, hi = cdf.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (cdf[mid] <= u) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return lo;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace randlchs
