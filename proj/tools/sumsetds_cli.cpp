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


// sumsetds: generate instances, preprocess them, answer queries and run
// scaling sweeps.
//
// Exit codes: 0 success, 1 verification mismatch, 2 I/O or format error,
// 3 flag error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sumsetds/bench.hpp"
#include "sumsetds/core.hpp"
#include "sumsetds/engine.hpp"
#include "sumsetds/generate.hpp"
#include "sumsetds/io.hpp"
#include "sumsetds/oracle.hpp"

namespace {

using namespace sumsetds;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitIo = 2;
constexpr int kExitFlags = 3;

std::uint64_t effective_seed(std::uint64_t flag_seed) {
  const char* env = std::getenv("SUMSETDS_SEED");
  if (env == nullptr || *env == '\0') return flag_seed;
  std::uint64_t seed = 0;
  const std::string_view text(env);
  const auto res = std::from_chars(text.data(), text.data() + text.size(), seed);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw ParameterError("SUMSETDS_SEED is not an unsigned integer: '" + std::string(text) + "'");
  return seed;
}

Rational parse_epsilon(const std::string& text) {
  const Rational eps = Rational::parse(text);
  if (eps < Rational(0) || eps > Rational(1, 2))
    throw ParameterError("--epsilon must lie in [0, 1/2], got " + text);
  return eps;
}

struct GenFlags {
  std::uint64_t n = 0;
  std::uint64_t seed = 1;
  std::string dist = "uniform";
  std::uint64_t plant = 4;
  double alpha = 3.0;
  std::string out;
  std::string query_out;
};

int run_gen(const GenFlags& f) {
  if (f.n < 2) throw ParameterError("--n must be at least 2");
  const Distribution dist = parse_distribution(f.dist);
  if (dist == Distribution::kPlanted && (f.plant == 0 || 2 * f.plant > 4 * f.n))
    throw ParameterError("--plant must lie in [1, 2n]");
  Rng rng(effective_seed(f.seed));
  const InstanceFile file = generate_instance(f.n, f.alpha, dist, rng);
  save_instance(f.out, file);
  if (dist == Distribution::kPlanted || !f.query_out.empty()) {
    const std::uint64_t planted = dist == Distribution::kPlanted ? f.plant : 0;
    const QueryFile q = generate_query(file, planted, std::max<std::uint64_t>(planted, 1), rng);
    save_query(f.query_out.empty() ? f.out + ".query" : f.query_out, q);
  }
  return kExitOk;
}

struct BuildFlags {
  std::string in;
  std::string epsilon = "0";
  std::uint64_t seed = 1;
  std::string out;
};

int run_build(const BuildFlags& f) {
  const Rational eps = parse_epsilon(f.epsilon);
  const std::uint64_t seed = effective_seed(f.seed);
  const InstanceFile file = load_instance(f.in);
  Constants constants;
  constants.universe_exponent = file.alpha;
  const PreprocessedStructure ds = preprocess(file.instance(), eps, seed, constants);
  save_structure(f.out, ds);
  BenchRecord rec;
  rec.n = ds.params.n;
  rec.epsilon = eps;
  rec.seed = seed;
  rec.stored_words = ds.report.total_words();
  rec.heavy_words = ds.report.heavy_words;
  rec.nonheavy_words = ds.report.nonheavy_words;
  rec.build_millis = ds.report.elapsed_ms;
  write_bench_row(std::cout, rec);
  return kExitOk;
}

struct QueryFlags {
  std::string ds;
  std::string query;
  bool verify = false;
  bool cost = false;
};

int run_query(const QueryFlags& f) {
  const PreprocessedStructure ds = load_structure(f.ds);
  const QueryFile file = load_query(f.query);
  const QueryInput q = file.to_input(ds.instance);
  CostReport cost;
  const QueryAnswer answer = query(ds, q, &cost);
  std::optional<QueryAnswer> truth;
  if (f.verify) truth = oracle::oracle_query(ds.instance, q);
  int status = kExitOk;
  for (std::size_t k = 0; k < answer.per_c.size(); ++k) {
    const Verdict& v = answer.per_c[k];
    std::cout << v.c_value << (v.yes ? " yes" : " no");
    if (v.witness)
      std::cout << " witness " << ds.instance.original_a(v.witness->a_index) << ' '
                << ds.instance.original_b(v.witness->b_index);
    std::cout << '\n';
    if (truth && truth->per_c[k].yes != v.yes) {
      std::cerr << "mismatch at c=" << v.c_value << ": oracle says " << (truth->per_c[k].yes ? "yes" : "no") << '\n';
      status = kExitMismatch;
    }
  }
  if (f.cost)
    std::cout << "cost," << cost.heavy_probes << ',' << cost.heavy_attempts << ',' << cost.histogram_units << ','
              << cost.nonheavy_probes << ',' << cost.evaluations << ',' << cost.fallback_probes << ','
              << (cost.fallback ? 1 : 0) << '\n';
  return status;
}

struct BenchFlags {
  std::vector<std::uint64_t> ns;
  std::vector<std::string> epsilons;
  std::uint64_t trials = 3;
  std::uint64_t jobs = 1;
  std::uint64_t queries = 2;
  std::uint64_t seed = 1;
  std::string out;
};

int run_bench_command(const BenchFlags& f) {
  BenchConfig config;
  config.ns = f.ns;
  for (const auto& e : f.epsilons) config.epsilons.push_back(parse_epsilon(e));
  config.trials = f.trials;
  config.jobs = f.jobs;
  config.queries = f.queries;
  config.seed = effective_seed(f.seed);
  config.validate();
  std::ofstream out;
  if (!f.out.empty()) {
    out.open(f.out, std::ios::trunc);
    if (!out) throw IoError("cannot open '" + f.out + "' for writing");
  }
  const auto rows = run_bench(config);
  write_bench_csv(f.out.empty() ? std::cout : out, rows);
  if (out.is_open() && !out) throw IoError("write to '" + f.out + "' failed");
  write_slope_summary(std::cout, fit_slopes(rows));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized 3SUM over preprocessed universes"};
  app.require_subcommand(1);

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance file (and a query file for planted instances)");
  gen_cmd->add_option("--n", gen.n, "Set size")->required();
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--dist", gen.dist, "uniform, planted or heavytail");
  gen_cmd->add_option("--plant", gen.plant, "Planted targets in the companion query file");
  gen_cmd->add_option("--alpha", gen.alpha, "Values are drawn from [1, n^alpha]");
  gen_cmd->add_option("--out", gen.out, "Instance file to write")->required();
  gen_cmd->add_option("--query-out", gen.query_out, "Query file to write (default <out>.query)");

  BuildFlags build;
  auto* build_cmd = app.add_subcommand("build", "Preprocess an instance file");
  build_cmd->add_option("--in", build.in, "Instance file")->required();
  build_cmd->add_option("--epsilon", build.epsilon, "Tradeoff parameter in [0, 1/2]");
  build_cmd->add_option("--seed", build.seed, "Random seed");
  build_cmd->add_option("--out", build.out, "Structure file to write")->required();

  QueryFlags query_flags;
  auto* query_cmd = app.add_subcommand("query", "Answer a query file against a structure");
  query_cmd->add_option("--ds", query_flags.ds, "Structure file")->required();
  query_cmd->add_option("--query", query_flags.query, "Query file")->required();
  query_cmd->add_flag("--verify", query_flags.verify, "Cross-check every verdict against brute force");
  query_cmd->add_flag("--cost", query_flags.cost, "Append a CSV cost line");

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "Scaling sweep with fitted log-log slopes");
  bench_cmd->add_option("--ns", bench.ns, "Sizes")->required()->delimiter(',');
  bench_cmd->add_option("--epsilons", bench.epsilons, "Tradeoff parameters")->required()->delimiter(',');
  bench_cmd->add_option("--trials", bench.trials, "Trials per (n, epsilon)");
  bench_cmd->add_option("--jobs", bench.jobs, "Concurrent trials");
  bench_cmd->add_option("--queries", bench.queries, "Queries per trial");
  bench_cmd->add_option("--seed", bench.seed, "Base seed");
  bench_cmd->add_option("--out", bench.out, "CSV file (default standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitFlags;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*build_cmd) return run_build(build);
    if (*query_cmd) return run_query(query_flags);
    if (*bench_cmd) return run_bench_command(bench);
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFlags;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return kExitIo;
  }
  return kExitFlags;
}
