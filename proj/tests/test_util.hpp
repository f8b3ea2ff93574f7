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


#ifndef SUMSETDS_TESTS_TEST_UTIL_HPP_
#define SUMSETDS_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "sumsetds/core.hpp"
#include "sumsetds/random.hpp"

namespace sumsetds::testing {

inline std::vector<std::int64_t> random_values(Rng& rng, std::size_t size, std::int64_t lo, std::int64_t hi) {
  std::set<std::int64_t> s;
  while (s.size() < size) s.insert(lo + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(hi - lo + 1))));
  return {s.begin(), s.end()};
}

// Random values mixed with an arithmetic progression so that many sums repeat.
inline std::vector<std::int64_t> progression_heavy(Rng& rng, std::size_t size, std::int64_t universe,
                                                   std::int64_t step) {
  std::set<std::int64_t> s;
  for (std::size_t k = 0; k < size / 2; ++k) s.insert(1 + static_cast<std::int64_t>(k) * step);
  while (s.size() < size) s.insert(1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(universe))));
  return {s.begin(), s.end()};
}

// Instance over already-positive values, no shift applied.
inline Instance direct_instance(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
  Instance inst;
  inst.a = std::move(a);
  inst.b = std::move(b);
  inst.n = std::max(inst.a.size(), inst.b.size());
  inst.universe = std::max(inst.a.back(), inst.b.back());
  return inst;
}

inline std::vector<bool> random_membership(Rng& rng, std::size_t size, double density) {
  std::vector<bool> m(size);
  for (std::size_t i = 0; i < size; ++i) m[i] = rng.unit() < density;
  return m;
}

inline std::uint64_t brute_pair_count(const Instance& inst, const QueryInput& q, std::uint64_t c) {
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < inst.a.size(); ++i)
    for (std::size_t j = 0; j < inst.b.size(); ++j)
      if (q.a_prime[i] && q.b_prime[j] && inst.a[i] + inst.b[j] == c) ++count;
  return count;
}

// f(x) = pi(x) / fan for a random permutation pi of [N]: every image point
// has exactly `fan` preimages (the last one possibly fewer).
inline std::vector<std::uint64_t> collapsing_function(Rng& rng, std::uint64_t domain, std::uint64_t fan) {
  std::vector<std::uint64_t> f(domain);
  for (std::uint64_t x = 0; x < domain; ++x) f[x] = x;
  rng.shuffle(f.begin(), f.end());
  for (auto& v : f) v /= fan;
  return f;
}

}  // namespace sumsetds::testing

#endif  // SUMSETDS_TESTS_TEST_UTIL_HPP_
