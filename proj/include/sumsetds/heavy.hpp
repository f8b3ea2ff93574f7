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


#ifndef SUMSETDS_HEAVY_HPP_
#define SUMSETDS_HEAVY_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sumsetds/conv.hpp"
#include "sumsetds/core.hpp"
#include "sumsetds/numth.hpp"
#include "sumsetds/random.hpp"

namespace sumsetds {

// Values of A + B whose multiplicity reaches the threshold, plus M = max(A + B).
struct HeavyHitterSet {
  std::vector<std::uint64_t> members;  // sorted
  std::uint64_t max_sum = 0;

  bool contains(std::uint64_t c) const { return std::binary_search(members.begin(), members.end(), c); }

  std::optional<std::size_t> index_of(std::uint64_t c) const {
    const auto it = std::lower_bound(members.begin(), members.end(), c);
    if (it == members.end() || *it != c) return std::nullopt;
    return static_cast<std::size_t>(it - members.begin());
  }

  friend bool operator==(const HeavyHitterSet&, const HeavyHitterSet&) = default;
};

struct IndexPair {
  std::uint32_t a_index = 0;
  std::uint32_t b_index = 0;

  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

// False positives for one prime, grouped by heavy hitter: pairs whose sum is
// congruent to c modulo p without being equal to c. Group k belongs to
// HeavyHitterSet::members[k].
struct FalsePositiveMap {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> offsets;  // |members| + 1 entries
  std::vector<IndexPair> pairs;

  std::span<const IndexPair> group(std::size_t k) const {
    return {pairs.data() + offsets[k], pairs.data() + offsets[k + 1]};
  }
  std::size_t size() const { return pairs.size(); }
  std::uint64_t stored_words() const { return 1 + offsets.size() + 2 * pairs.size(); }

  friend bool operator==(const FalsePositiveMap&, const FalsePositiveMap&) = default;
};

struct HeavyStage {
  std::uint64_t threshold = 1;
  HeavyHitterSet hitters;
  std::vector<FalsePositiveMap> reps;

  std::uint64_t stored_words() const {
    std::uint64_t words = 2 + hitters.members.size();
    for (const auto& f : reps) words += f.stored_words();
    return words;
  }

  friend bool operator==(const HeavyStage&, const HeavyStage&) = default;
};

// Sorted enumeration of A + B through a |A|-way heap merge over the streams
// a + B[0] < a + B[1] < ..., counting equal runs. O(n) working space.
inline HeavyHitterSet compute_heavy_hitters(const Instance& inst, std::uint64_t threshold) {
  HeavyHitterSet result;
  result.max_sum = inst.max_sum();
  // A set pair can only reach multiplicity min(|A|, |B|).
  if (threshold > std::min(inst.a.size(), inst.b.size())) return result;

  struct Cursor {
    std::uint64_t sum;
    std::uint32_t i;
    std::uint32_t j;
  };
  const auto later = [](const Cursor& x, const Cursor& y) { return x.sum > y.sum; };
  std::vector<Cursor> heap;
  heap.reserve(inst.a.size());
  for (std::uint32_t i = 0; i < inst.a.size(); ++i) heap.push_back({inst.a[i] + inst.b[0], i, 0});
  std::make_heap(heap.begin(), heap.end(), later);

  std::uint64_t current = 0, run = 0;
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), later);
    Cursor& top = heap.back();
    if (top.sum != current) {
      if (run >= threshold) result.members.push_back(current);
      current = top.sum;
      run = 0;
    }
    ++run;
    if (top.j + 1 < inst.b.size()) {
      ++top.j;
      top.sum = inst.a[top.i] + inst.b[top.j];
      std::push_heap(heap.begin(), heap.end(), later);
    } else {
      heap.pop_back();
    }
  }
  if (run >= threshold) result.members.push_back(current);
  return result;
}

// Streams all |A||B| pairs once, matching each sum against the heavy hitters
// sharing its residue. O(n^2 + p + |F|) time.
inline FalsePositiveMap build_false_positive_map(const Instance& inst, const HeavyHitterSet& hitters,
                                                 std::uint64_t p) {
  if (p < 2) throw ParameterError("false-positive modulus must be at least 2");
  FalsePositiveMap fp;
  fp.p = p;
  const std::size_t groups = hitters.members.size();
  fp.offsets.assign(groups + 1, 0);
  if (groups == 0) return fp;

  struct Keyed {
    std::uint64_t residue;
    std::uint32_t k;
  };
  std::vector<Keyed> by_residue(groups);
  std::vector<bool> occupied(p, false);
  for (std::uint32_t k = 0; k < groups; ++k) {
    by_residue[k] = {hitters.members[k] % p, k};
    occupied[by_residue[k].residue] = true;
  }
  std::sort(by_residue.begin(), by_residue.end(),
            [](const Keyed& x, const Keyed& y) { return x.residue < y.residue || (x.residue == y.residue && x.k < y.k); });

  struct Triple {
    std::uint32_t k;
    IndexPair pair;
  };
  std::vector<Triple> found;
  for (std::uint32_t i = 0; i < inst.a.size(); ++i) {
    for (std::uint32_t j = 0; j < inst.b.size(); ++j) {
      const std::uint64_t s = inst.a[i] + inst.b[j];
      const std::uint64_t rho = s % p;
      if (!occupied[rho]) continue;
      auto it = std::lower_bound(by_residue.begin(), by_residue.end(), rho,
                                 [](const Keyed& x, std::uint64_t r) { return x.residue < r; });
      for (; it != by_residue.end() && it->residue == rho; ++it)
        if (hitters.members[it->k] != s) found.push_back({it->k, {i, j}});
    }
  }
  for (const auto& t : found) ++fp.offsets[t.k + 1];
  for (std::size_t k = 0; k < groups; ++k) fp.offsets[k + 1] += fp.offsets[k];
  fp.pairs.resize(found.size());
  std::vector<std::uint64_t> cursor(fp.offsets.begin(), fp.offsets.end() - 1);
  for (const auto& t : found) fp.pairs[cursor[t.k]++] = t.pair;
  return fp;
}

// Primes for the false-positive maps are drawn from [n^r, 2 n^r).
inline PrimeRange heavy_prime_range(const TradeoffParams& params) {
  const std::uint64_t lo = std::max<std::uint64_t>(2, ceil_power(params.n, params.r));
  return {lo, 2 * lo};
}

inline HeavyStage build_heavy_stage(const Instance& inst, const TradeoffParams& params, Rng rng) {
  HeavyStage stage;
  stage.threshold = params.heavy_threshold;
  stage.hitters = compute_heavy_hitters(inst, params.heavy_threshold);
  const PrimeRange range = heavy_prime_range(params);
  stage.reps.reserve(params.heavy_reps);
  for (std::uint64_t rep = 0; rep < params.heavy_reps; ++rep) {
    Rng rep_rng = rng.split(rep);
    stage.reps.push_back(build_false_positive_map(inst, stage.hitters, sample_prime(range, rep_rng)));
  }
  return stage;
}

struct HeavyOutcome {
  bool completed = false;
  std::size_t repetition = 0;  // repetition that finished within budget
  std::size_t attempts = 0;
  std::vector<std::uint64_t> counts;  // exact pair counts, aligned with targets
};

// Histogram supplier computing A' + B' (mod p) from the query's members.
inline auto make_histogram_provider(const Instance& inst, const QueryInput& q) {
  std::vector<std::uint64_t> a_values, b_values;
  for (std::size_t i = 0; i < inst.a.size(); ++i)
    if (q.a_prime[i]) a_values.push_back(inst.a[i]);
  for (std::size_t j = 0; j < inst.b.size(); ++j)
    if (q.b_prime[j]) b_values.push_back(inst.b[j]);
  return [a_values = std::move(a_values), b_values = std::move(b_values)](std::size_t, std::uint64_t p) {
    return sumset_histogram(a_values, b_values, p);
  };
}

// Counts, for each heavy target c, the pairs of A' x B' summing to c as
// H[c mod p] minus the false positives of c that survive the restriction.
// Repetitions are tried in order; one that spends more than `budget` probes
// scanning F' is abandoned. `targets` must be members of the hitter set.
template <class HistogramProvider>
HeavyOutcome heavy_query(const HeavyStage& stage, const QueryInput& q, std::span<const std::uint64_t> targets,
                         HistogramProvider&& histogram_for, std::uint64_t budget, WorkCounter& work) {
  HeavyOutcome out;
  for (std::size_t rep = 0; rep < stage.reps.size(); ++rep) {
    const FalsePositiveMap& fp = stage.reps[rep];
    ++out.attempts;
    const ResidueHistogram h = histogram_for(rep, fp.p);
    work.histogram_units += h.work_units;

    std::vector<std::uint64_t> counts(targets.size(), 0);
    std::uint64_t spent = 0;
    bool within_budget = true;
    for (std::size_t t = 0; t < targets.size() && within_budget; ++t) {
      ++spent;
      const auto k = stage.hitters.index_of(targets[t]);
      if (!k) throw InputError("heavy query target is not a heavy hitter");
      std::uint64_t spurious = 0;
      for (const IndexPair& pair : fp.group(*k)) {
        if (++spent > budget) {
          within_budget = false;
          break;
        }
        if (q.a_prime[pair.a_index] && q.b_prime[pair.b_index]) ++spurious;
      }
      counts[t] = h.at(targets[t]) - spurious;
    }
    work.probes += spent;
    if (within_budget && spent <= budget) {
      out.completed = true;
      out.repetition = rep;
      out.counts = std::move(counts);
      return out;
    }
  }
  return out;
}

}  // namespace sumsetds

#endif  // SUMSETDS_HEAVY_HPP_
