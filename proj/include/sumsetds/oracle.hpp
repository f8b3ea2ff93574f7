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


#ifndef SUMSETDS_ORACLE_HPP_
#define SUMSETDS_ORACLE_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sumsetds/core.hpp"

// Brute-force references for differential testing. Nothing here shares code
// with the preprocessing or query paths.
namespace sumsetds::oracle {

struct IndexedValue {
  std::uint64_t value;
  std::uint32_t index;
  bool operator<(const IndexedValue& o) const { return value < o.value; }
};

inline std::vector<IndexedValue> sorted_members(const std::vector<std::uint64_t>& values,
                                                const std::vector<bool>& member) {
  std::vector<IndexedValue> out;
  for (std::uint32_t i = 0; i < values.size(); ++i)
    if (member[i]) out.push_back({values[i], i});
  std::sort(out.begin(), out.end());
  return out;
}

// Number of pairs of A' x B' summing to the normalized target c.
inline std::uint64_t pair_count(const Instance& inst, const QueryInput& q, std::int64_t c) {
  const auto b_sorted = sorted_members(inst.b, q.b_prime);
  std::uint64_t count = 0;
  for (std::uint32_t i = 0; i < inst.a.size(); ++i) {
    if (!q.a_prime[i]) continue;
    const std::int64_t want = c - static_cast<std::int64_t>(inst.a[i]);
    if (want <= 0) continue;
    const auto it = std::lower_bound(b_sorted.begin(), b_sorted.end(),
                                     IndexedValue{static_cast<std::uint64_t>(want), 0});
    if (it != b_sorted.end() && it->value == static_cast<std::uint64_t>(want)) ++count;
  }
  return count;
}

// For each c: sort B' once, then binary-search c - a for every a in A'.
inline QueryAnswer oracle_query(const Instance& inst, const QueryInput& q) {
  const auto b_sorted = sorted_members(inst.b, q.b_prime);
  QueryAnswer answer;
  for (const std::int64_t raw : q.c_prime) {
    Verdict v;
    v.c_value = raw;
    v.path = AnswerPath::kOracle;
    const std::int64_t c = translate_query_c(raw, inst, q.convention);
    for (std::uint32_t i = 0; i < inst.a.size() && !v.yes; ++i) {
      if (!q.a_prime[i]) continue;
      const __int128 want = static_cast<__int128>(c) - inst.a[i];
      if (want <= 0) continue;
      const auto it = std::lower_bound(b_sorted.begin(), b_sorted.end(),
                                       IndexedValue{static_cast<std::uint64_t>(want), 0});
      if (it != b_sorted.end() && it->value == static_cast<std::uint64_t>(want)) {
        v.yes = true;
        v.witness = Witness{i, it->index, inst.a[i], it->value};
      }
    }
    answer.any_yes = answer.any_yes || v.yes;
    answer.per_c.push_back(v);
  }
  return answer;
}

inline constexpr std::uint64_t kMultiplicityCap = 4096;

// sum -> number of pairs of A x B attaining it.
inline std::map<std::uint64_t, std::uint64_t> oracle_multiplicities(const Instance& inst,
                                                                    std::uint64_t cap = kMultiplicityCap) {
  if (inst.n > cap) throw CapacityError("multiplicity oracle limited to n <= " + std::to_string(cap));
  std::map<std::uint64_t, std::uint64_t> mult;
  for (const auto a : inst.a)
    for (const auto b : inst.b) ++mult[a + b];
  return mult;
}

// Every x in [N] with f(x) == y.
template <class F>
std::vector<std::uint64_t> oracle_preimages(const F& f, std::uint64_t domain_size, std::uint64_t y) {
  if (domain_size > (std::uint64_t{1} << 20)) throw CapacityError("preimage oracle limited to N <= 2^20");
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < domain_size; ++x)
    if (f(x) == y) out.push_back(x);
  return out;
}

}  // namespace sumsetds::oracle

#endif  // SUMSETDS_ORACLE_HPP_
