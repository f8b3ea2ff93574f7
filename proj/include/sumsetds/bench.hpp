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


#ifndef SUMSETDS_BENCH_HPP_
#define SUMSETDS_BENCH_HPP_

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "sumsetds/core.hpp"
#include "sumsetds/engine.hpp"
#include "sumsetds/generate.hpp"
#include "sumsetds/io.hpp"
#include "sumsetds/oracle.hpp"

namespace sumsetds {

inline constexpr const char* kBenchHeader =
    "n,epsilon,seed,storedWords,heavyWords,nonheavyWords,buildMillis,queryProbes,queryEvals,queryMillis,"
    "falseNoCount,fallbackCount";

// One (n, epsilon, trial) measurement. Query columns are means per query.
struct BenchRecord {
  std::uint64_t n = 0;
  Rational epsilon;
  std::uint64_t seed = 0;
  std::uint64_t stored_words = 0;
  std::uint64_t heavy_words = 0;
  std::uint64_t nonheavy_words = 0;
  double build_millis = 0;
  double query_probes = 0;
  double query_evals = 0;
  double query_millis = 0;
  std::uint64_t false_no_count = 0;
  std::uint64_t fallback_count = 0;

  double query_cost() const { return query_probes + query_evals; }
};

inline void write_bench_row(std::ostream& out, const BenchRecord& r) {
  out << r.n << ',' << internal::shortest(r.epsilon.to_double()) << ',' << r.seed << ',' << r.stored_words << ','
      << r.heavy_words << ',' << r.nonheavy_words << ',' << internal::shortest(r.build_millis) << ','
      << internal::shortest(r.query_probes) << ',' << internal::shortest(r.query_evals) << ','
      << internal::shortest(r.query_millis) << ',' << r.false_no_count << ',' << r.fallback_count << '\n';
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& rows) {
  out << kBenchHeader << '\n';
  for (const auto& r : rows) write_bench_row(out, r);
}

struct BenchConfig {
  std::vector<std::uint64_t> ns;
  std::vector<Rational> epsilons;
  std::uint64_t trials = 1;
  std::uint64_t jobs = 1;
  std::uint64_t seed = 1;
  std::uint64_t queries = 3;  // per trial
  double alpha = 3.0;
  Constants constants;

  void validate() const {
    if (ns.empty() || epsilons.empty()) throw ParameterError("bench needs at least one n and one epsilon");
    if (trials == 0) throw ParameterError("bench needs at least one trial");
    if (jobs == 0) throw ParameterError("bench needs at least one job");
    if (queries == 0) throw ParameterError("bench needs at least one query per trial");
    for (const auto n : ns)
      if (n < 2) throw ParameterError("bench sizes must be at least 2");
  }
};

// Builds a uniform instance and runs `queries` queries with n/2 planted
// targets and n/2 decoys each, checking every verdict against the oracle.
inline BenchRecord run_trial(std::uint64_t n, Rational epsilon, std::uint64_t seed, const BenchConfig& config) {
  using Clock = std::chrono::steady_clock;
  Rng rng(seed);
  const InstanceFile file = generate_instance(n, config.alpha, Distribution::kUniform, rng);
  BenchRecord rec;
  rec.n = n;
  rec.epsilon = epsilon;
  rec.seed = seed;

  const auto build_start = Clock::now();
  const PreprocessedStructure ds = preprocess(file.instance(), epsilon, seed, config.constants);
  rec.build_millis = std::chrono::duration<double, std::milli>(Clock::now() - build_start).count();
  rec.stored_words = ds.report.total_words();
  rec.heavy_words = ds.report.heavy_words;
  rec.nonheavy_words = ds.report.nonheavy_words;

  double probes = 0, evals = 0, millis = 0;
  for (std::uint64_t k = 0; k < config.queries; ++k) {
    const QueryInput q = generate_query(file, n / 2, n - n / 2, rng).to_input(ds.instance);
    CostReport cost;
    const auto query_start = Clock::now();
    const QueryAnswer answer = query(ds, q, &cost);
    millis += std::chrono::duration<double, std::milli>(Clock::now() - query_start).count();
    probes += static_cast<double>(cost.probes() + cost.histogram_units);
    evals += static_cast<double>(cost.evaluations);
    rec.fallback_count += cost.fallback ? 1 : 0;
    const QueryAnswer truth = oracle::oracle_query(ds.instance, q);
    for (std::size_t c = 0; c < truth.per_c.size(); ++c)
      if (truth.per_c[c].yes && !answer.per_c[c].yes) ++rec.false_no_count;
  }
  const auto count = static_cast<double>(config.queries);
  rec.query_probes = probes / count;
  rec.query_evals = evals / count;
  rec.query_millis = millis / count;
  return rec;
}

inline std::uint64_t trial_seed(std::uint64_t base, std::uint64_t n, Rational epsilon, std::uint64_t trial) {
  std::uint64_t s = derive_seed(base, n);
  s = derive_seed(s, static_cast<std::uint64_t>(epsilon.num()) * 1000003 + static_cast<std::uint64_t>(epsilon.den()));
  return derive_seed(s, trial);
}

// All (n, epsilon, trial) rows, sorted by epsilon, n and seed.
inline std::vector<BenchRecord> run_bench(const BenchConfig& config) {
  config.validate();
  std::vector<std::tuple<std::uint64_t, Rational, std::uint64_t>> work;
  for (const auto& eps : config.epsilons)
    for (const auto n : config.ns)
      for (std::uint64_t t = 0; t < config.trials; ++t) work.emplace_back(n, eps, trial_seed(config.seed, n, eps, t));

  std::vector<BenchRecord> rows(work.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  const auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < work.size();) {
      try {
        const auto& [n, eps, seed] = work[k];
        rows[k] = run_trial(n, eps, seed, config);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(config.jobs, work.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  std::sort(rows.begin(), rows.end(), [](const BenchRecord& x, const BenchRecord& y) {
    return std::tie(x.epsilon, x.n, x.seed) < std::tie(y.epsilon, y.n, y.seed);
  });
  return rows;
}

inline double median(std::vector<double> values) {
  if (values.empty()) throw ParameterError("median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : (values[mid - 1] + values[mid]) / 2;
}

// Least-squares slope of log2 y against log2 x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ParameterError("slope fit needs at least two points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw ParameterError("slope fit needs positive values");
    mx += std::log2(x[i]);
    my += std::log2(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log2(x[i]) - mx;
    sxy += dx * (std::log2(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0) throw ParameterError("slope fit needs at least two distinct sizes");
  return sxy / sxx;
}

struct SlopeSummary {
  Rational epsilon;
  double stored_words = 0;
  double query_cost = 0;
  double build_millis = 0;
};

// Per epsilon: slopes over n of the per-n medians.
inline std::vector<SlopeSummary> fit_slopes(const std::vector<BenchRecord>& rows) {
  std::map<Rational, std::map<std::uint64_t, std::vector<const BenchRecord*>>> grouped;
  for (const auto& r : rows) grouped[r.epsilon][r.n].push_back(&r);
  std::vector<SlopeSummary> out;
  for (const auto& [eps, by_n] : grouped) {
    if (by_n.size() < 2) continue;
    std::vector<double> ns, words, cost, build;
    for (const auto& [n, recs] : by_n) {
      std::vector<double> w, c, b;
      for (const auto* r : recs) {
        w.push_back(static_cast<double>(r->stored_words));
        c.push_back(r->query_cost());
        b.push_back(r->build_millis);
      }
      ns.push_back(static_cast<double>(n));
      words.push_back(median(w));
      cost.push_back(median(c));
      build.push_back(median(b));
    }
    out.push_back({eps, loglog_slope(ns, words), loglog_slope(ns, cost), loglog_slope(ns, build)});
  }
  return out;
}

inline void write_slope_summary(std::ostream& out, const std::vector<SlopeSummary>& slopes) {
  for (const auto& s : slopes)
    out << "slope epsilon=" << internal::shortest(s.epsilon.to_double())
        << " storedWords=" << internal::shortest(std::round(s.stored_words * 1000) / 1000)
        << " queryCost=" << internal::shortest(std::round(s.query_cost * 1000) / 1000)
        << " buildMillis=" << internal::shortest(std::round(s.build_millis * 1000) / 1000) << '\n';
}

}  // namespace sumsetds

#endif  // SUMSETDS_BENCH_HPP_
