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


#ifndef SUMSETDS_NUMTH_HPP_
#define SUMSETDS_NUMTH_HPP_

#include <cstdint>
#include <string>

#include "sumsetds/core.hpp"
#include "sumsetds/random.hpp"

namespace sumsetds {

class RangeEmptyError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::uint64_t kMaxPrime = std::uint64_t{1} << 62;

inline std::uint64_t mul_mod(std::uint64_t x, std::uint64_t y, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  for (; exp > 0; exp >>= 1) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
  }
  return result;
}

// Deterministic Miller-Rabin. The first twelve primes as witnesses are
// complete for every 64-bit input.
inline bool is_prime(std::uint64_t x) {
  constexpr std::uint64_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (x < 2) return false;
  for (auto w : kWitnesses) {
    if (x == w) return true;
    if (x % w == 0) return false;
  }
  std::uint64_t d = x - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto w : kWitnesses) {
    std::uint64_t y = pow_mod(w, d, x);
    if (y == 1 || y == x - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      y = mul_mod(y, y, x);
      if (y == x - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Smallest prime >= x.
inline std::uint64_t next_prime(std::uint64_t x) {
  if (x <= 2) return 2;
  for (std::uint64_t c = x | 1;; c += 2)
    if (is_prime(c)) return c;
}

// Half-open range [lo, hi).
struct PrimeRange {
  std::uint64_t lo = 2;
  std::uint64_t hi = 3;

  void validate() const {
    if (lo < 2 || hi <= lo || hi > kMaxPrime)
      throw ParameterError("invalid prime range [" + std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }
};

// Rejection sampling: uniform over the primes of the range.
inline std::uint64_t sample_prime(const PrimeRange& range, Rng& rng) {
  range.validate();
  constexpr std::uint64_t kRejectionFactor = 32;
  const std::uint64_t width = range.hi - range.lo;
  const std::uint64_t attempts = width > (std::uint64_t{1} << 40) ? std::uint64_t{1} << 45 : kRejectionFactor * width;
  for (std::uint64_t i = 0; i < attempts; ++i) {
    const std::uint64_t x = rng.in_range(range.lo, range.hi);
    if (is_prime(x)) return x;
  }
  throw RangeEmptyError("no prime found in [" + std::to_string(range.lo) + ", " + std::to_string(range.hi) + ")");
}

// x -> ((a x + b) mod q) mod m, pairwise independent over prime q.
struct AffineHash {
  std::uint64_t a = 1;
  std::uint64_t b = 0;
  std::uint64_t q = 2;
  std::uint64_t m = 1;

  std::uint64_t operator()(std::uint64_t x) const {
    if (((a | x | b) >> 32) == 0) return (a * x + b) % q % m;
    const auto t = static_cast<unsigned __int128>(a) * x + b;
    return static_cast<std::uint64_t>(t % q) % m;
  }

  static AffineHash random(std::uint64_t q, std::uint64_t m, Rng& rng) {
    return AffineHash{rng.in_range(1, q), rng.below(q), q, m};
  }

  friend bool operator==(const AffineHash&, const AffineHash&) = default;
};

inline std::uint64_t affine_hash_eval(const AffineHash& h, std::uint64_t x) { return h(x); }

}  // namespace sumsetds

#endif  // SUMSETDS_NUMTH_HPP_
