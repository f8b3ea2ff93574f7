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


#ifndef SUMSETDS_INVERT_HPP_
#define SUMSETDS_INVERT_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "sumsetds/core.hpp"
#include "sumsetds/numth.hpp"
#include "sumsetds/random.hpp"

namespace sumsetds {

// Shape of a chain-table inverter for f : [N] -> codomain.
//
// With t tables of m = N / t^2 chains of length t, the structure stores about
// N / t endpoints and answers with about t^2 evaluations, the S^2 T = N^2
// operating point for functions of bounded in-degree.
struct InverterConfig {
  std::uint64_t domain_size = 1;    // N
  std::uint64_t max_in_degree = 1;  // Delta, informational
  std::uint64_t chain_length = 1;   // t
  std::uint64_t table_count = 1;    // tau
  std::uint64_t chains_per_table = 1;  // m
  std::uint64_t false_alarm_cap = 4;   // per table and query

  // Default tradeoff point for chain length t: tau = t and m = kappa N / t^2.
  // t is lowered until m t^2 <= kappa N can hold with m >= 1.
  static InverterConfig for_chain_length(std::uint64_t domain_size, std::uint64_t t,
                                         std::uint64_t max_in_degree = 1, double kappa = 1.0) {
    if (domain_size == 0) throw ParameterError("inverter domain must be nonempty");
    const double budget = kappa * static_cast<double>(domain_size);
    t = std::max<std::uint64_t>(t, 1);
    while (t > 1 && static_cast<double>(t) * static_cast<double>(t) > budget) --t;
    InverterConfig c;
    c.domain_size = domain_size;
    c.max_in_degree = max_in_degree;
    c.chain_length = t;
    c.table_count = t;
    c.chains_per_table = std::clamp<std::uint64_t>(
        static_cast<std::uint64_t>(budget / static_cast<double>(t * t)), 1, domain_size);
    c.false_alarm_cap = 4 * t;
    return c;
  }

  void validate() const {
    if (domain_size == 0 || domain_size > std::numeric_limits<std::uint32_t>::max())
      throw CapacityError("inverter domain size " + std::to_string(domain_size) + " outside [1, 2^32)");
    if (chain_length == 0 || table_count == 0 || chains_per_table == 0 || false_alarm_cap == 0)
      throw ParameterError("inverter configuration fields must be positive");
    if (chains_per_table > domain_size) throw ParameterError("more chains than domain points");
  }

  friend bool operator==(const InverterConfig&, const InverterConfig&) = default;
};

struct Chain {
  std::uint32_t endpoint = 0;
  std::uint32_t start = 0;

  friend bool operator==(const Chain&, const Chain&) = default;
  friend auto operator<=>(const Chain&, const Chain&) = default;
};

// One table: a re-randomizer g_k and its chains sorted by endpoint.
struct ChainTable {
  AffineHash rerandomizer;
  std::vector<Chain> chains;

  friend bool operator==(const ChainTable&, const ChainTable&) = default;
};

// Tables for one function under one codomain hash into [N].
struct InversionTable {
  InverterConfig config;
  AffineHash codomain;
  std::vector<ChainTable> tables;

  // Hash of a codomain value into [N].
  std::uint64_t hash_value(std::uint64_t y) const { return codomain(y % codomain.q); }

  // h_k(x) = g_k(hash(f(x))).
  template <class F>
  std::uint64_t step(const F& f, std::size_t k, std::uint64_t x) const {
    return tables[k].rerandomizer(hash_value(f(x)));
  }

  std::uint64_t stored_words() const {
    std::uint64_t words = 0;
    for (const auto& t : tables) words += 2 * t.chains.size();
    return words;
  }

  friend bool operator==(const InversionTable&, const InversionTable&) = default;
};

namespace internal {

// m distinct points of [N] (Floyd's algorithm, or a shuffle when dense).
inline std::vector<std::uint32_t> distinct_sample(std::uint64_t domain, std::uint64_t m, Rng& rng) {
  std::vector<std::uint32_t> out;
  out.reserve(m);
  if (2 * m >= domain) {
    std::vector<std::uint32_t> all(domain);
    std::iota(all.begin(), all.end(), 0u);
    rng.shuffle(all.begin(), all.end());
    all.resize(m);
    return all;
  }
  std::unordered_set<std::uint32_t> seen;
  seen.reserve(2 * m);
  for (std::uint64_t j = domain - m; j < domain; ++j) {
    auto pick = static_cast<std::uint32_t>(rng.below(j + 1));
    if (!seen.insert(pick).second) {
      pick = static_cast<std::uint32_t>(j);
      seen.insert(pick);
    }
    out.push_back(pick);
  }
  return out;
}

}  // namespace internal

// Builds the chain tables for f under `codomain` (an AffineHash into [N]).
// Uses tau * m * t evaluations of f.
template <class F>
InversionTable build_inverter(const F& f, const AffineHash& codomain, const InverterConfig& config, Rng& rng,
                              WorkCounter* work = nullptr) {
  config.validate();
  if (codomain.m != config.domain_size) throw ParameterError("codomain hash must map into the domain [N]");
  InversionTable table;
  table.config = config;
  table.codomain = codomain;
  table.tables.resize(config.table_count);
  const std::uint64_t n = config.domain_size;
  const std::uint64_t q = next_prime(std::max<std::uint64_t>(n, 2));
  for (std::size_t k = 0; k < config.table_count; ++k) {
    ChainTable& ct = table.tables[k];
    ct.rerandomizer = AffineHash::random(q, n, rng);
    const auto starts = internal::distinct_sample(n, config.chains_per_table, rng);
    // (endpoint, last point before the endpoint, generation order, start)
    std::vector<std::array<std::uint32_t, 4>> walked;
    walked.reserve(starts.size());
    for (std::uint32_t j = 0; j < starts.size(); ++j) {
      std::uint64_t prev = starts[j], x = starts[j];
      for (std::uint64_t i = 0; i < config.chain_length; ++i) {
        prev = x;
        x = table.step(f, k, x);
      }
      walked.push_back({static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(prev), j, starts[j]});
    }
    // Chains that merged before their final step keep only the first start.
    std::sort(walked.begin(), walked.end());
    ct.chains.reserve(walked.size());
    for (std::size_t j = 0; j < walked.size(); ++j) {
      if (j > 0 && walked[j][0] == walked[j - 1][0] && walked[j][1] == walked[j - 1][1]) continue;
      ct.chains.push_back({walked[j][0], walked[j][3]});
    }
    std::sort(ct.chains.begin(), ct.chains.end());
    if (work) work->evaluations += starts.size() * config.chain_length;
  }
  return table;
}

struct InvertResult {
  std::optional<std::uint64_t> preimage;
  bool capped = false;  // some table hit its false-alarm cap
};

// Searches every table of every set for an x with f(x) == y exactly and
// accept(x). Candidates failing either test are skipped, so a returned x is
// always a true preimage.
template <class F, class Accept>
InvertResult invert(std::span<const InversionTable> table_set, const F& f, std::uint64_t y, const Accept& accept,
                    WorkCounter& work) {
  InvertResult result;
  for (const InversionTable& table : table_set) {
    const std::uint64_t t = table.config.chain_length;
    const std::uint64_t hy = table.hash_value(y);
    for (std::size_t k = 0; k < table.tables.size(); ++k) {
      const auto& chains = table.tables[k].chains;
      std::uint64_t z = table.tables[k].rerandomizer(hy);
      std::uint64_t alarms = 0;
      for (std::uint64_t i = 0; i < t; ++i) {
        ++work.probes;
        const Chain key{static_cast<std::uint32_t>(z), 0};
        for (auto it = std::lower_bound(chains.begin(), chains.end(), key);
             it != chains.end() && it->endpoint == key.endpoint; ++it) {
          if (++alarms > table.config.false_alarm_cap) {
            result.capped = true;
            goto next_table;
          }
          std::uint64_t x = it->start;
          for (std::uint64_t s = 0; s + 1 + i < t; ++s) x = table.step(f, k, x);
          work.evaluations += t - i;
          if (f(x) == y && accept(x)) {
            result.preimage = x;
            return result;
          }
        }
        if (i + 1 < t) {
          z = table.step(f, k, z);
          ++work.evaluations;
        }
      }
    next_table:;
    }
  }
  return result;
}

template <class F>
InvertResult invert(std::span<const InversionTable> table_set, const F& f, std::uint64_t y, WorkCounter& work) {
  return invert(table_set, f, y, [](std::uint64_t) { return true; }, work);
}

struct InverterCost {
  std::uint64_t stored_words = 0;
  std::uint64_t worst_case_evals = 0;

  friend bool operator==(const InverterCost&, const InverterCost&) = default;
};

inline InverterCost measured_cost(std::span<const InversionTable> table_set) {
  InverterCost cost;
  for (const auto& table : table_set) {
    cost.stored_words += table.stored_words();
    const auto& c = table.config;
    cost.worst_case_evals += c.table_count * c.chain_length * (1 + c.false_alarm_cap);
  }
  return cost;
}

}  // namespace sumsetds

#endif  // SUMSETDS_INVERT_HPP_
