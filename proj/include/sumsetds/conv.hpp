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


#ifndef SUMSETDS_CONV_HPP_
#define SUMSETDS_CONV_HPP_

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sumsetds/core.hpp"

namespace sumsetds {

// Per-residue pair counts of A' + B' modulo p.
struct ResidueHistogram {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> counts;
  // Machine-independent cost of producing the histogram.
  std::uint64_t work_units = 0;

  std::uint64_t at(std::uint64_t value) const { return counts[value % p]; }
};

namespace ntt {

// 29 * 2^57 + 1, primitive root 3.
inline constexpr std::uint64_t kModulus = 4179340454199820289ULL;
inline constexpr std::uint64_t kGenerator = 3;
inline constexpr int kMaxLog = 57;

// Montgomery arithmetic modulo kModulus with R = 2^64.
struct Montgomery {
  static constexpr std::uint64_t kInv = [] {
    std::uint64_t inv = kModulus;  // Newton iteration for kModulus^{-1} mod 2^64
    for (int i = 0; i < 6; ++i) inv *= 2 - kModulus * inv;
    return inv;
  }();
  static constexpr std::uint64_t kR2 = [] {
    unsigned __int128 r = (static_cast<unsigned __int128>(1) << 64) % kModulus;
    return static_cast<std::uint64_t>(r * r % kModulus);
  }();

  static std::uint64_t reduce(unsigned __int128 t) {
    const std::uint64_t m = static_cast<std::uint64_t>(t) * -kInv;
    const auto u = static_cast<std::uint64_t>((t + static_cast<unsigned __int128>(m) * kModulus) >> 64);
    return u >= kModulus ? u - kModulus : u;
  }
  static std::uint64_t mul(std::uint64_t x, std::uint64_t y) {
    return reduce(static_cast<unsigned __int128>(x) * y);
  }
  static std::uint64_t to(std::uint64_t x) { return mul(x % kModulus, kR2); }
  static std::uint64_t from(std::uint64_t x) { return reduce(x); }
  static std::uint64_t add(std::uint64_t x, std::uint64_t y) {
    const std::uint64_t s = x + y;
    return s >= kModulus ? s - kModulus : s;
  }
  static std::uint64_t sub(std::uint64_t x, std::uint64_t y) { return x >= y ? x - y : x + kModulus - y; }
  static std::uint64_t pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t result = to(1);
    for (; exp > 0; exp >>= 1) {
      if (exp & 1) result = mul(result, base);
      base = mul(base, base);
    }
    return result;
  }
};

// In-place transform of a power-of-two length vector held in Montgomery form.
inline void transform(std::vector<std::uint64_t>& v, bool inverse) {
  using M = Montgomery;
  const std::size_t n = v.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(v[i], v[j]);
  }
  std::vector<std::uint64_t> twiddles;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint64_t root = M::pow(M::to(kGenerator), (kModulus - 1) / len);
    if (inverse) root = M::pow(root, kModulus - 2);
    const std::size_t half = len / 2;
    twiddles.resize(half);
    twiddles[0] = M::to(1);
    for (std::size_t k = 1; k < half; ++k) twiddles[k] = M::mul(twiddles[k - 1], root);
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::uint64_t x = v[start + k];
        const std::uint64_t y = M::mul(v[start + k + half], twiddles[k]);
        v[start + k] = M::add(x, y);
        v[start + k + half] = M::sub(x, y);
      }
    }
  }
  if (inverse) {
    const std::uint64_t scale = M::pow(M::to(n), kModulus - 2);
    for (auto& x : v) x = M::mul(x, scale);
  }
}

// Exact cyclic convolution of two count vectors of equal length p.
inline std::vector<std::uint64_t> cyclic_convolution(std::span<const std::uint64_t> x,
                                                     std::span<const std::uint64_t> y) {
  using M = Montgomery;
  const std::size_t p = x.size();
  const std::size_t len = std::bit_ceil(2 * p);
  std::vector<std::uint64_t> fx(len, 0), fy(len, 0);
  for (std::size_t i = 0; i < p; ++i) {
    fx[i] = M::to(x[i]);
    fy[i] = M::to(y[i]);
  }
  transform(fx, false);
  transform(fy, false);
  for (std::size_t i = 0; i < len; ++i) fx[i] = M::mul(fx[i], fy[i]);
  transform(fx, true);
  std::vector<std::uint64_t> out(p, 0);
  for (std::size_t i = 0; i < len && i < 2 * p; ++i) out[i % p] += M::from(fx[i]);
  return out;
}

}  // namespace ntt

// Below this modulus the schoolbook cyclic convolution is used.
inline constexpr std::uint64_t kSchoolbookLimit = 1024;
// Largest transform length accepted (memory bound, not a field limit).
inline constexpr int kMaxTransformLog = 25;

inline std::uint64_t transform_length(std::uint64_t p) { return std::bit_ceil(2 * p); }

// Histogram of A' + B' (mod p), computed exactly. Cost O(n + p log p).
inline ResidueHistogram sumset_histogram(std::span<const std::uint64_t> a_values,
                                         std::span<const std::uint64_t> b_values, std::uint64_t p) {
  if (p < 2) throw ParameterError("modulus must be at least 2");
  if (p >= kSchoolbookLimit && transform_length(p) > (std::uint64_t{1} << kMaxTransformLog))
    throw CapacityError("modulus " + std::to_string(p) + " exceeds the transform capacity");
  if (static_cast<unsigned __int128>(a_values.size()) * b_values.size() >= ntt::kModulus)
    throw CapacityError("pair count exceeds the transform field");

  std::vector<std::uint64_t> ca(p, 0), cb(p, 0);
  for (auto a : a_values) ++ca[a % p];
  for (auto b : b_values) ++cb[b % p];

  ResidueHistogram h;
  h.p = p;
  h.work_units = a_values.size() + b_values.size();
  if (p < kSchoolbookLimit) {
    h.counts.assign(p, 0);
    for (std::uint64_t i = 0; i < p; ++i) {
      if (ca[i] == 0) continue;
      for (std::uint64_t j = 0; j < p; ++j) {
        const std::uint64_t k = i + j >= p ? i + j - p : i + j;
        h.counts[k] += ca[i] * cb[j];
      }
    }
    h.work_units += p * p;
  } else {
    h.counts = ntt::cyclic_convolution(ca, cb);
    const std::uint64_t len = transform_length(p);
    h.work_units += 3 * len * static_cast<std::uint64_t>(std::bit_width(len) - 1);
  }
  return h;
}

}  // namespace sumsetds

#endif  // SUMSETDS_CONV_HPP_
