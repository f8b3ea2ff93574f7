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


#include "sumsetds/io.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "sumsetds/generate.hpp"
#include "test_util.hpp"

namespace sumsetds {
namespace {

std::string instance_text(const InstanceFile& f) {
  std::ostringstream out;
  write_instance(out, f);
  return out.str();
}

std::string query_text(const QueryFile& f) {
  std::ostringstream out;
  write_query(out, f);
  return out.str();
}

TEST(InstanceFileTest, WritesTheDocumentedLayout) {
  InstanceFile f;
  f.a = {-2, 5};
  f.b = {7};
  EXPECT_EQ(instance_text(f), "n 2\nu 3\nA\n-2\n5\nB\n7\n");
  f.alpha = 2.5;
  EXPECT_EQ(instance_text(f).substr(4, 6), "u 2.5\n");
}

TEST(InstanceFileTest, RoundTripsRandomInstances) {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    InstanceFile f;
    f.alpha = 1.0 + static_cast<double>(rng.below(400)) / 100.0;
    f.a = testing::random_values(rng, rng.in_range(1, 60), -1000000, 1000000);
    f.b = testing::random_values(rng, rng.in_range(1, 60), -1000000, 1000000);
    rng.shuffle(f.a.begin(), f.a.end());
    const std::string text = instance_text(f);
    std::istringstream in(text);
    const InstanceFile back = read_instance(in);
    EXPECT_EQ(back, f);
    EXPECT_EQ(instance_text(back), text);
    EXPECT_EQ(back.instance(), f.instance());
  }
}

TEST(InstanceFileTest, RejectsMalformedInput) {
  const std::vector<std::string> bad = {
      "",
      "n 2\nu 3\nA\n1\n2\n",            // no B section
      "n 3\nu 3\nA\n1\n2\nB\n1\n",      // size mismatch
      "n 1\nu 3\nA\nx\nB\n1\n",         // not a number
      "count 1\nu 3\nA\n1\nB\n1\n",     // bad key
      "n 1\nu three\nA\n1\nB\n1\n",
      "n 1\nu 3\nB\n1\n",
  };
  for (const auto& text : bad) {
    std::istringstream in(text);
    EXPECT_THROW(read_instance(in), FormatError) << text;
  }
  std::istringstream crlf("n 1\r\nu 3\r\nA\r\n4\r\nB\r\n9\r\n");
  EXPECT_EQ(read_instance(crlf).b, (std::vector<std::int64_t>{9}));
}

TEST(QueryFileTest, RoundTripsRandomQueries) {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    QueryFile f;
    f.convention = trial % 2 ? Convention::kZero : Convention::kSum;
    for (std::uint64_t k = rng.below(20); k > 0; --k) f.a_indices.push_back(static_cast<std::uint32_t>(rng.below(100)));
    for (std::uint64_t k = rng.below(20); k > 0; --k) f.b_indices.push_back(static_cast<std::uint32_t>(rng.below(100)));
    for (std::uint64_t k = rng.below(20); k > 0; --k)
      f.c_values.push_back(static_cast<std::int64_t>(rng.below(1000000)) - 500000);
    const std::string text = query_text(f);
    std::istringstream in(text);
    const QueryFile back = read_query(in);
    EXPECT_EQ(back, f);
    EXPECT_EQ(query_text(back), text);
  }
}

TEST(QueryFileTest, LayoutAndErrors) {
  QueryFile f;
  f.convention = Convention::kZero;
  f.a_indices = {0};
  f.c_values = {-3};
  EXPECT_EQ(query_text(f), "convention zero\nAPRIME\n0\nBPRIME\nC\n-3\n");
  for (const std::string text : {"convention odd\nAPRIME\nBPRIME\nC\n", "convention sum\nAPRIME\n1\nBPRIME\n",
                                 "APRIME\nBPRIME\nC\n", "convention sum\nAPRIME\n-1\nBPRIME\nC\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(read_query(in), FormatError) << text;
  }
  const Instance inst = testing::direct_instance({1, 2}, {1, 2});
  f.a_indices = {5};
  EXPECT_THROW(f.to_input(inst), InputError);
}

PreprocessedStructure sample_structure(std::uint64_t n, Rational eps, Distribution dist, std::uint64_t seed) {
  Rng rng(seed);
  return preprocess(generate_instance(n, 3.0, dist, rng).instance(), eps, seed);
}

TEST(StructureFormatTest, RoundTripsByteIdentically) {
  for (const auto dist : {Distribution::kUniform, Distribution::kHeavyTail}) {
    for (const Rational eps : {Rational(0), Rational(3, 10), Rational(1, 2)}) {
      const auto ds = sample_structure(60, eps, dist, 3);
      const std::string bytes = serialize(ds);
      const auto back = deserialize(bytes);
      EXPECT_EQ(back.instance, ds.instance);
      EXPECT_EQ(back.params, ds.params);
      EXPECT_EQ(back.heavy, ds.heavy);
      EXPECT_EQ(back.nonheavy, ds.nonheavy);
      EXPECT_EQ(back.report, ds.report);
      EXPECT_EQ(serialize(back), bytes);
    }
  }
}

TEST(StructureFormatTest, DeterministicAcrossBuilds) {
  EXPECT_EQ(serialize(sample_structure(50, Rational(1, 4), Distribution::kHeavyTail, 9)),
            serialize(sample_structure(50, Rational(1, 4), Distribution::kHeavyTail, 9)));
}

TEST(StructureFormatTest, LoadedStructureAnswersLikeTheOriginal) {
  const auto ds = sample_structure(80, Rational(1, 5), Distribution::kHeavyTail, 4);
  const auto back = deserialize(serialize(ds));
  Rng rng(5);
  QueryInput q;
  q.a_prime = testing::random_membership(rng, 80, 0.6);
  q.b_prime = testing::random_membership(rng, 80, 0.6);
  for (int k = 0; k < 100; ++k) q.c_prime.push_back(static_cast<std::int64_t>(rng.below(ds.instance.max_sum() + 2)));
  CostReport a, b;
  const auto x = query(ds, q, &a), y = query(back, q, &b);
  EXPECT_EQ(a, b);
  for (std::size_t k = 0; k < x.per_c.size(); ++k) EXPECT_EQ(x.per_c[k].yes, y.per_c[k].yes);
}

TEST(StructureFormatTest, RejectsDamagedData) {
  const std::string bytes = serialize(sample_structure(20, Rational(0), Distribution::kUniform, 6));
  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(deserialize(bad_magic), FormatError);
  std::string bad_version = bytes;
  bad_version[8] = 9;
  EXPECT_THROW(deserialize(bad_version), FormatError);
  for (std::size_t cut : {std::size_t{0}, std::size_t{5}, std::size_t{12}, bytes.size() / 2, bytes.size() - 1})
    EXPECT_THROW(deserialize(bytes.substr(0, cut)), FormatError) << cut;
  EXPECT_THROW(deserialize(bytes + "x"), FormatError);
}

TEST(StructureFormatTest, MissingFileIsAnIoError) {
  EXPECT_THROW(load_structure("/nonexistent/dir/ds.bin"), IoError);
  EXPECT_THROW(load_instance("/nonexistent/dir/i.txt"), IoError);
  EXPECT_THROW(save_query("/nonexistent/dir/q.txt", QueryFile{}), IoError);
}

TEST(GenerateTest, InstancesRespectTheUniverse) {
  Rng rng(7);
  for (const auto dist : {Distribution::kUniform, Distribution::kPlanted, Distribution::kHeavyTail}) {
    const auto f = generate_instance(4, 3.0, dist, rng);
    EXPECT_EQ(f.a.size(), 4u);
    EXPECT_EQ(f.b.size(), 4u);
    for (const auto v : f.a) EXPECT_TRUE(v >= 1 && v <= 64);
    EXPECT_NO_THROW(f.instance());
  }
  EXPECT_EQ(parse_distribution("heavytail"), Distribution::kHeavyTail);
  EXPECT_THROW(parse_distribution("zipf"), ParameterError);
  EXPECT_THROW(generate_instance(4, 0.5, Distribution::kUniform, rng), ParameterError);
}

TEST(GenerateTest, HeavyTailProducesHeavyHitters) {
  Rng rng(8);
  const auto ds = preprocess(generate_instance(256, 3.0, Distribution::kHeavyTail, rng).instance(), Rational(0), 1);
  EXPECT_GT(ds.heavy.hitters.members.size(), 10u);
}

TEST(GenerateTest, PlantedTargetsAreInTheSumset) {
  Rng rng(9);
  const auto f = generate_instance(30, 3.0, Distribution::kPlanted, rng);
  const auto qf = generate_query(f, 3, 3, rng);
  const Instance inst = f.instance();
  const auto q = qf.to_input(inst);
  for (std::size_t k = 0; k < 3; ++k) {
    const std::int64_t c = translate_query_c(qf.c_values[k], inst, Convention::kSum);
    EXPECT_GT(testing::brute_pair_count(inst, q, static_cast<std::uint64_t>(c)), 0u);
  }
}

}  // namespace
}  // namespace sumsetds
