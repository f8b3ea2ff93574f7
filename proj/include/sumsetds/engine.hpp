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


#ifndef SUMSETDS_ENGINE_HPP_
#define SUMSETDS_ENGINE_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "sumsetds/core.hpp"
#include "sumsetds/heavy.hpp"
#include "sumsetds/nonheavy.hpp"
#include "sumsetds/random.hpp"

namespace sumsetds {

struct BuildReport {
  double elapsed_ms = 0;  // not serialized
  std::uint64_t seed = 0;
  std::uint64_t core_words = 0;
  std::uint64_t heavy_words = 0;
  std::uint64_t nonheavy_words = 0;
  std::uint64_t heavy_hitters = 0;
  std::uint64_t false_positives = 0;  // summed over repetitions
  std::uint64_t inversion_tables = 0;
  // Stored words stay below slack * (n^{2-delta} + n^{4-delta-r} +
  // n^{2-eta+delta}) * max(2, log2 n)^polylog_power.
  double slack = 32;
  int polylog_power = 2;

  std::uint64_t total_words() const { return core_words + heavy_words + nonheavy_words; }

  double space_bound(const TradeoffParams& p) const {
    const double n = static_cast<double>(p.n);
    const double d = p.delta.to_double(), r = p.r.to_double(), eta = p.eta.to_double();
    const double terms = std::pow(n, 2 - d) + std::pow(n, 4 - d - r) + std::pow(n, 2 - eta + d);
    return slack * terms * std::pow(std::max(2.0, std::log2(n)), polylog_power);
  }

  bool operator==(const BuildReport& o) const {
    return seed == o.seed && core_words == o.core_words && heavy_words == o.heavy_words &&
           nonheavy_words == o.nonheavy_words && heavy_hitters == o.heavy_hitters &&
           false_positives == o.false_positives && inversion_tables == o.inversion_tables && slack == o.slack &&
           polylog_power == o.polylog_power;
  }
};

struct PreprocessedStructure {
  Instance instance;
  Constants constants;
  TradeoffParams params;
  HeavyStage heavy;
  NonHeavyStage nonheavy;
  BuildReport report;

  friend bool operator==(const PreprocessedStructure&, const PreprocessedStructure&) = default;
};

inline void fill_report(PreprocessedStructure& ds) {
  BuildReport& r = ds.report;
  r.core_words = ds.instance.a.size() + ds.instance.b.size() + 4;
  r.heavy_words = ds.heavy.stored_words();
  r.nonheavy_words = ds.nonheavy.stored_words();
  r.heavy_hitters = ds.heavy.hitters.members.size();
  r.false_positives = 0;
  for (const auto& fp : ds.heavy.reps) r.false_positives += fp.size();
  r.inversion_tables = ds.nonheavy.table_count();
}

inline PreprocessedStructure preprocess(const Instance& instance, Rational epsilon, std::uint64_t seed,
                                        const Constants& constants = {}) {
  const auto start = std::chrono::steady_clock::now();
  PreprocessedStructure ds;
  ds.instance = instance;
  ds.constants = constants;
  ds.params = derive_params(instance.n, epsilon, constants);
  const Rng root(seed);
  ds.heavy = build_heavy_stage(ds.instance, ds.params, root.split(1));
  ds.nonheavy = build_nonheavy(ds.instance, ds.params, ds.heavy.hitters, root.split(2), constants.universe_exponent);
  ds.report.seed = seed;
  fill_report(ds);
  ds.report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return ds;
}

inline PreprocessedStructure preprocess(std::span<const std::int64_t> raw_a, std::span<const std::int64_t> raw_b,
                                        Rational epsilon, std::uint64_t seed, const Constants& constants = {}) {
  const auto start = std::chrono::steady_clock::now();
  PreprocessedStructure ds = preprocess(normalize(raw_a, raw_b), epsilon, seed, constants);
  ds.report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return ds;
}

struct CostReport {
  std::uint64_t heavy_probes = 0;
  std::uint64_t heavy_attempts = 0;  // repetitions tried, over all escalation rounds
  std::uint64_t histogram_units = 0;
  std::uint64_t nonheavy_probes = 0;
  std::uint64_t evaluations = 0;
  std::uint64_t fallback_probes = 0;
  bool fallback = false;

  std::uint64_t probes() const { return heavy_probes + nonheavy_probes + fallback_probes; }
  std::uint64_t total() const { return probes() + evaluations + histogram_units; }

  friend bool operator==(const CostReport&, const CostReport&) = default;
};

namespace internal {

// Exact count of pairs of A' x B' summing to c by binary search over B.
inline std::uint64_t direct_pair_count(const Instance& inst, const QueryInput& q, std::uint64_t c,
                                       std::uint64_t& probes) {
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < inst.a.size(); ++i) {
    if (!q.a_prime[i] || inst.a[i] >= c) continue;
    ++probes;
    const auto it = std::lower_bound(inst.b.begin(), inst.b.end(), c - inst.a[i]);
    if (it != inst.b.end() && *it == c - inst.a[i] && q.b_prime[it - inst.b.begin()]) ++count;
  }
  return count;
}

}  // namespace internal

// Answers every c of C': heavy targets by exact counting, the rest by
// witness search. Out-of-range targets are answered no without work.
inline QueryAnswer query(const PreprocessedStructure& ds, const QueryInput& q, CostReport* cost = nullptr) {
  const Instance& inst = ds.instance;
  q.validate(inst, ds.params.max_query_size);
  CostReport local;
  CostReport& report = cost ? *cost : local;

  std::vector<std::int64_t> targets(q.c_prime.size());
  std::vector<std::uint64_t> heavy_targets;
  for (std::size_t k = 0; k < q.c_prime.size(); ++k) {
    targets[k] = translate_query_c(q.c_prime[k], inst, q.convention);
    const std::int64_t t = targets[k];
    if (t >= 2 && static_cast<std::uint64_t>(t) <= ds.heavy.hitters.max_sum &&
        ds.heavy.hitters.contains(static_cast<std::uint64_t>(t)))
      heavy_targets.push_back(static_cast<std::uint64_t>(t));
  }
  std::sort(heavy_targets.begin(), heavy_targets.end());
  heavy_targets.erase(std::unique(heavy_targets.begin(), heavy_targets.end()), heavy_targets.end());

  QueryAnswer answer;
  std::vector<std::uint64_t> heavy_counts;
  if (!heavy_targets.empty()) {
    auto provider = make_histogram_provider(inst, q);
    std::uint64_t budget = ds.params.heavy_budget;
    for (int round = 0; round < 2 && heavy_counts.empty(); ++round, budget *= 2) {
      WorkCounter work;
      HeavyOutcome outcome = heavy_query(ds.heavy, q, heavy_targets, provider, budget, work);
      report.heavy_probes += work.probes;
      report.histogram_units += work.histogram_units;
      report.heavy_attempts += outcome.attempts;
      if (outcome.completed) heavy_counts = std::move(outcome.counts);
    }
    if (heavy_counts.empty()) {
      report.fallback = true;
      answer.fallback_used = true;
      for (const std::uint64_t c : heavy_targets)
        heavy_counts.push_back(internal::direct_pair_count(inst, q, c, report.fallback_probes));
    }
  }

  std::map<std::uint64_t, std::optional<Witness>> nonheavy_cache;
  answer.per_c.reserve(q.c_prime.size());
  for (std::size_t k = 0; k < q.c_prime.size(); ++k) {
    Verdict v;
    v.c_value = q.c_prime[k];
    const std::int64_t t = targets[k];
    if (t < 2 || static_cast<std::uint64_t>(t) > ds.heavy.hitters.max_sum) {
      v.path = AnswerPath::kOutOfRange;
    } else if (const auto c = static_cast<std::uint64_t>(t); ds.heavy.hitters.contains(c)) {
      const auto pos = std::lower_bound(heavy_targets.begin(), heavy_targets.end(), c) - heavy_targets.begin();
      v.pair_count = heavy_counts[pos];
      v.yes = *v.pair_count > 0;
      v.path = answer.fallback_used ? AnswerPath::kFallback : AnswerPath::kHeavy;
    } else {
      auto it = nonheavy_cache.find(c);
      if (it == nonheavy_cache.end()) {
        WorkCounter work;
        it = nonheavy_cache.emplace(c, nonheavy_query(ds.nonheavy, inst, ds.heavy.hitters, q, c, work)).first;
        report.nonheavy_probes += work.probes;
        report.evaluations += work.evaluations;
      }
      v.witness = it->second;
      v.yes = v.witness.has_value();
      v.path = AnswerPath::kNonHeavy;
    }
    answer.any_yes = answer.any_yes || v.yes;
    answer.per_c.push_back(std::move(v));
  }
  return answer;
}

inline CostReport query_cost(const PreprocessedStructure& ds, const QueryInput& q) {
  CostReport cost;
  query(ds, q, &cost);
  return cost;
}

}  // namespace sumsetds

#endif  // SUMSETDS_ENGINE_HPP_
