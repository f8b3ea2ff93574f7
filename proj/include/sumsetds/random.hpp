// Copyright 2026 The sumsetds Authors
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


#ifndef SUMSETDS_RANDOM_HPP_
#define SUMSETDS_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <utility>

namespace sumsetds {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for a named sub-stream of `seed`. Distinct tags give unrelated seeds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return splitmix64(splitmix64(seed) ^ splitmix64(tag + 0x632be59bd9b4e019ULL));
}

// Seedable, splittable generator. Bounded draws use rejection sampling so
// streams are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= limit) return x % bound;
    }
  }

  // Uniform in [lo, hi).
  std::uint64_t in_range(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo); }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  Rng split(std::uint64_t tag) const { return Rng(derive_seed(seed_, tag)); }

  template <class It>
  void shuffle(It first, It last) {
    const auto size = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = size; i > 1; --i) std::swap(first[i - 1], first[below(i)]);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace sumsetds

#endif  // SUMSETDS_RANDOM_HPP_
