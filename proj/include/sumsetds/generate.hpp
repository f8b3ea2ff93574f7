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


#ifndef SUMSETDS_GENERATE_HPP_
#define SUMSETDS_GENERATE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "sumsetds/core.hpp"
#include "sumsetds/io.hpp"
#include "sumsetds/random.hpp"

namespace sumsetds {

enum class Distribution { kUniform, kPlanted, kHeavyTail };

inline Distribution parse_distribution(std::string_view name) {
  if (name == "uniform") return Distribution::kUniform;
  if (name == "planted") return Distribution::kPlanted;
  if (name == "heavytail") return Distribution::kHeavyTail;
  throw ParameterError("unknown distribution '" + std::string(name) + "'");
}

// Largest value drawn for size n: floor(n^alpha), capped at the universe.
inline std::uint64_t value_limit(std::uint64_t n, double alpha) {
  const double limit = std::floor(std::pow(static_cast<double>(n), alpha) + 1e-9);
  if (!(limit >= static_cast<double>(n))) throw ParameterError("n^alpha must be at least n");
  return limit >= static_cast<double>(kMaxUniverse) ? kMaxUniverse : static_cast<std::uint64_t>(limit);
}

namespace internal {

inline std::vector<std::int64_t> distinct_values(Rng& rng, std::uint64_t n, std::uint64_t limit,
                                                 std::vector<std::int64_t> seeded = {}) {
  std::unordered_set<std::int64_t> seen(seeded.begin(), seeded.end());
  std::vector<std::int64_t> out(seen.begin(), seen.end());
  while (out.size() < n) {
    const auto v = static_cast<std::int64_t>(1 + rng.below(limit));
    if (seen.insert(v).second) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Progression 1, 1 + step, ... of half the set, so that many sums repeat.
inline std::vector<std::int64_t> progression(std::uint64_t n, std::uint64_t limit) {
  const std::uint64_t length = std::max<std::uint64_t>(1, n / 2);
  const std::uint64_t step = std::max<std::uint64_t>(1, std::min<std::uint64_t>(7, (limit - 1) / length));
  std::vector<std::int64_t> out;
  for (std::uint64_t k = 0; k < length; ++k) out.push_back(static_cast<std::int64_t>(1 + k * step));
  return out;
}

}  // namespace internal

// Distinct values from [1, n^alpha]. The heavy-tail mix puts an arithmetic
// progression into both sets.
inline InstanceFile generate_instance(std::uint64_t n, double alpha, Distribution dist, Rng& rng) {
  if (n < 1) throw ParameterError("n must be positive");
  const std::uint64_t limit = value_limit(n, alpha);
  InstanceFile file;
  file.alpha = alpha;
  if (dist == Distribution::kHeavyTail) {
    file.a = internal::distinct_values(rng, n, limit, internal::progression(n, limit));
    file.b = internal::distinct_values(rng, n, limit, internal::progression(n, limit));
  } else {
    file.a = internal::distinct_values(rng, n, limit);
    file.b = internal::distinct_values(rng, n, limit);
  }
  return file;
}

// Query over random halves of A and B whose targets are `planted` sums of
// pairs inside A' x B' followed by `decoys` uniform values in [2, max sum].
inline QueryFile generate_query(const InstanceFile& file, std::uint64_t planted, std::uint64_t decoys, Rng& rng) {
  QueryFile q;
  const std::size_t na = file.a.size(), nb = file.b.size();
  std::vector<bool> in_a(na), in_b(nb);
  for (std::size_t i = 0; i < na; ++i) in_a[i] = rng.below(2) == 1;
  for (std::size_t j = 0; j < nb; ++j) in_b[j] = rng.below(2) == 1;
  for (std::uint64_t k = 0; k < planted; ++k) {
    const std::size_t i = rng.below(na), j = rng.below(nb);
    in_a[i] = in_b[j] = true;
    q.c_values.push_back(file.a[i] + file.b[j]);
  }
  const std::int64_t lo = file.a.front() + file.b.front();
  const std::int64_t hi = file.a.back() + file.b.back();
  for (std::uint64_t k = 0; k < decoys; ++k)
    q.c_values.push_back(lo + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(hi - lo + 1))));
  for (std::uint32_t i = 0; i < na; ++i)
    if (in_a[i]) q.a_indices.push_back(i);
  for (std::uint32_t j = 0; j < nb; ++j)
    if (in_b[j]) q.b_indices.push_back(j);
  return q;
}

}  // namespace sumsetds

#endif  // SUMSETDS_GENERATE_HPP_
