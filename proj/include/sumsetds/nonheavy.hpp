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


#ifndef SUMSETDS_NONHEAVY_HPP_
#define SUMSETDS_NONHEAVY_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sumsetds/core.hpp"
#include "sumsetds/heavy.hpp"
#include "sumsetds/invert.hpp"
#include "sumsetds/numth.hpp"
#include "sumsetds/random.hpp"

namespace sumsetds {

// Random assignment of A's indices to ell parts.
struct Partition {
  std::vector<std::uint32_t> assignment;         // part of each A index
  std::vector<std::vector<std::uint32_t>> parts;  // A indices per part, ascending

  friend bool operator==(const Partition&, const Partition&) = default;
};

inline Partition random_partition(std::size_t count, std::uint64_t ell, Rng& rng) {
  if (ell == 0) throw ParameterError("partition needs at least one part");
  Partition p;
  p.assignment.resize(count);
  p.parts.resize(ell);
  for (std::uint32_t i = 0; i < count; ++i) {
    p.assignment[i] = static_cast<std::uint32_t>(rng.below(ell));
    p.parts[p.assignment[i]].push_back(i);
  }
  return p;
}

inline std::vector<Partition> build_partitions(const Instance& inst, const TradeoffParams& params, Rng rng) {
  std::vector<Partition> out;
  out.reserve(params.partition_reps);
  for (std::uint64_t rep = 0; rep < params.partition_reps; ++rep) {
    Rng rep_rng = rng.split(rep);
    out.push_back(random_partition(inst.a.size(), params.ell, rep_rng));
  }
  return out;
}

// f(a, b) = a + b off the heavy hitters and a * M + b on them. Injective on
// heavy pairs since 0 < b <= M; heavy encodings exceed every sum.
inline std::uint64_t encode_f(std::uint64_t a, std::uint64_t b, std::uint64_t max_sum, const HeavyHitterSet& hitters) {
  const std::uint64_t s = a + b;
  if (!hitters.contains(s)) return s;
  const unsigned __int128 encoded = static_cast<unsigned __int128>(a) * max_sum + b;
  if (encoded >= (static_cast<unsigned __int128>(1) << 63)) throw CapacityError("a*M + b overflows 63 bits");
  return static_cast<std::uint64_t>(encoded);
}

// f restricted to A_i x B, on the domain [|A_i| |B|] with x = local * |B| + j.
class EncodedFunction {
 public:
  EncodedFunction(const Instance& inst, std::span<const std::uint32_t> part, const HeavyHitterSet& hitters)
      : inst_(&inst), part_(part), hitters_(&hitters) {}

  std::uint64_t domain_size() const { return part_.size() * inst_->b.size(); }

  IndexPair decode(std::uint64_t x) const {
    const std::uint64_t width = inst_->b.size();
    return {part_[x / width], static_cast<std::uint32_t>(x % width)};
  }

  std::uint64_t operator()(std::uint64_t x) const {
    const IndexPair ij = decode(x);
    const std::uint64_t a = inst_->a[ij.a_index], b = inst_->b[ij.b_index];
    const std::uint64_t s = a + b;
    if (hitters_->members.empty() || !hitters_->contains(s)) return s;
    return a * hitters_->max_sum + b;  // range checked when the stage is built
  }

 private:
  const Instance* inst_;
  std::span<const std::uint32_t> part_;
  const HeavyHitterSet* hitters_;
};

// Exact maximum in-degree over the parts' encoded functions.
inline std::uint64_t check_in_degree(const Partition& partition, const Instance& inst, const HeavyHitterSet& hitters) {
  std::uint64_t worst = 0;
  std::vector<std::uint64_t> values;
  for (const auto& part : partition.parts) {
    if (part.empty()) continue;
    const EncodedFunction f(inst, part, hitters);
    values.resize(f.domain_size());
    for (std::uint64_t x = 0; x < values.size(); ++x) values[x] = f(x);
    std::sort(values.begin(), values.end());
    std::uint64_t run = 0;
    for (std::size_t k = 0; k < values.size(); ++k) {
      run = (k > 0 && values[k] == values[k - 1]) ? run + 1 : 1;
      worst = std::max(worst, run);
    }
  }
  return worst;
}

inline double in_degree_bound(std::uint64_t n) { return std::max(1.0, 11.0 * std::log(static_cast<double>(n))); }

// Codomain-hash primes come from [n^2, 6 alpha n^2 log2 n].
inline PrimeRange codomain_prime_range(std::uint64_t n, double alpha) {
  const std::uint64_t lo = std::max<std::uint64_t>(2, n * n);
  const double log_n = std::max(1.0, std::log2(static_cast<double>(n)));
  const auto hi = static_cast<std::uint64_t>(6.0 * alpha * static_cast<double>(n * n) * log_n) + 1;
  return {lo, std::max(hi, 2 * lo)};
}

struct NonHeavyRepetition {
  Partition partition;
  std::vector<std::uint64_t> primes;
  // Tables of part i occupy [table_offsets[i], table_offsets[i + 1]), one per prime.
  std::vector<std::uint32_t> table_offsets;
  std::vector<InversionTable> tables;
  std::uint64_t max_in_degree = 0;

  std::span<const InversionTable> tables_of(std::size_t part) const {
    return {tables.data() + table_offsets[part], tables.data() + table_offsets[part + 1]};
  }

  friend bool operator==(const NonHeavyRepetition&, const NonHeavyRepetition&) = default;
};

struct NonHeavyStage {
  std::uint64_t chain_length = 1;
  std::vector<NonHeavyRepetition> reps;

  std::uint64_t table_count() const {
    std::uint64_t count = 0;
    for (const auto& rep : reps) count += rep.tables.size();
    return count;
  }

  // Chains, partition assignments, primes and per-table hash parameters.
  std::uint64_t stored_words() const {
    std::uint64_t words = 1;
    for (const auto& rep : reps) {
      words += rep.partition.assignment.size() + rep.primes.size();
      for (const auto& table : rep.tables) words += table.stored_words() + 2 + 2 * table.tables.size();
    }
    return words;
  }

  friend bool operator==(const NonHeavyStage&, const NonHeavyStage&) = default;
};

inline NonHeavyStage build_nonheavy(const Instance& inst, const TradeoffParams& params, const HeavyHitterSet& hitters,
                                    Rng rng, double alpha = 3.0) {
  // Every heavy encoding is at most max(A) * M + max(B).
  if (!hitters.members.empty() &&
      static_cast<unsigned __int128>(inst.a.back()) * hitters.max_sum + inst.b.back() >=
          (static_cast<unsigned __int128>(1) << 63))
    throw CapacityError("heavy-pair encoding a*M + b overflows 63 bits; shrink the universe");
  constexpr int kPartitionRetries = 3;
  const double degree_bound = in_degree_bound(params.n);
  const PrimeRange prime_range = codomain_prime_range(params.n, alpha);

  NonHeavyStage stage;
  stage.chain_length = params.chain_length;
  stage.reps.resize(params.partition_reps);
  for (std::uint64_t rep = 0; rep < params.partition_reps; ++rep) {
    NonHeavyRepetition& r = stage.reps[rep];
    Rng rep_rng = rng.split(rep);
    for (int attempt = 0; attempt <= kPartitionRetries; ++attempt) {
      r.partition = random_partition(inst.a.size(), params.ell, rep_rng);
      r.max_in_degree = check_in_degree(r.partition, inst, hitters);
      if (static_cast<double>(r.max_in_degree) <= degree_bound) break;
    }
    for (std::uint64_t j = 0; j < params.hash_prime_count; ++j) r.primes.push_back(sample_prime(prime_range, rep_rng));

    r.table_offsets.assign(params.ell + 1, 0);
    for (std::size_t i = 0; i < params.ell; ++i) {
      const auto& part = r.partition.parts[i];
      if (!part.empty()) {
        const EncodedFunction f(inst, part, hitters);
        const std::uint64_t domain = f.domain_size();
        const auto config = InverterConfig::for_chain_length(domain, params.chain_length, r.max_in_degree);
        for (const std::uint64_t p : r.primes) {
          const AffineHash codomain = AffineHash::random(p, domain, rep_rng);
          r.tables.push_back(build_inverter(f, codomain, config, rep_rng));
        }
      }
      r.table_offsets[i + 1] = static_cast<std::uint32_t>(r.tables.size());
    }
  }
  return stage;
}

// Looks for (a, b) in A' x B' with a + b = c through every repetition, part
// and prime, stopping at the first verified witness. c must not be heavy.
inline std::optional<Witness> nonheavy_query(const NonHeavyStage& stage, const Instance& inst,
                                             const HeavyHitterSet& hitters, const QueryInput& q, std::uint64_t c,
                                             WorkCounter& work) {
  for (const auto& rep : stage.reps) {
    for (std::size_t i = 0; i < rep.partition.parts.size(); ++i) {
      const auto& part = rep.partition.parts[i];
      if (part.empty()) continue;
      const EncodedFunction f(inst, part, hitters);
      const auto member = [&](std::uint64_t x) {
        const IndexPair ij = f.decode(x);
        return q.a_prime[ij.a_index] && q.b_prime[ij.b_index];
      };
      const InvertResult found = invert(rep.tables_of(i), f, c, member, work);
      if (!found.preimage) continue;
      const IndexPair ij = f.decode(*found.preimage);
      const std::uint64_t a = inst.a[ij.a_index], b = inst.b[ij.b_index];
      if (a + b == c) return Witness{ij.a_index, ij.b_index, a, b};
    }
  }
  return std::nullopt;
}

}  // namespace sumsetds

#endif  // SUMSETDS_NONHEAVY_HPP_
