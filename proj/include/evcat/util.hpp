// Copyright 2026 The evcat Authors
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

#ifndef EVCAT_UTIL_HPP_
#define EVCAT_UTIL_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evcat/errors.hpp"

namespace evcat {

inline constexpr uint64_t kFnvOffset = 1469598103934665603ull;
inline constexpr uint64_t kFnvPrime = 1099511628211ull;

inline uint64_t fnv1a64(std::string_view bytes, uint64_t state = kFnvOffset) {
  for (unsigned char c : bytes) {
    state ^= c;
    state *= kFnvPrime;
  }
  return state;
}

inline uint64_t fnv1a64_mix(uint64_t value, uint64_t state = kFnvOffset) {
  for (int i = 0; i < 8; ++i) {
    state ^= value & 0xffu;
    state *= kFnvPrime;
    value >>= 8;
  }
  return state;
}

/// Deterministic random source.  mt19937_64 has a standardized sequence, and
/// all derived draws below avoid implementation-defined std distributions so
/// that a seed reproduces byte-identical output on any platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  /// Unbiased integer in [0, n), by rejection.
  uint64_t below(uint64_t n) {
    internal_check(n > 0, "Rng::below: n must be positive");
    const uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % n);
    uint64_t v = gen_();
    while (v >= limit) v = gen_();
    return v % n;
  }

  /// Integer in [lo, hi] inclusive.
  int64_t range(int64_t lo, int64_t hi) {
    internal_check(lo <= hi, "Rng::range: empty range");
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo) + 1));
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    internal_check(!v.empty(), "Rng::pick: empty vector");
    return v[below(v.size())];
  }

  /// Index drawn proportionally to the given non-negative weights.
  size_t weighted(std::span<const double> weights);

 private:
  std::mt19937_64 gen_;
};

/// Seed derivation for independent sub-streams (fold RNGs etc.).
inline uint64_t derive_seed(uint64_t seed, std::string_view purpose,
                            uint64_t index = 0) {
  return fnv1a64(purpose, fnv1a64_mix(index, fnv1a64_mix(seed)));
}

std::string join(std::span<const std::string> parts, std::string_view sep);

}  // namespace evcat

#endif  // EVCAT_UTIL_HPP_
