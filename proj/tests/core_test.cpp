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


#include "sumsetds/core.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

#include "sumsetds/random.hpp"

namespace sumsetds {
namespace {

TEST(RationalTest, ParsesDecimalsAndFractionsExactly) {
  EXPECT_EQ(Rational::parse("0.3"), Rational(3, 10));
  EXPECT_EQ(Rational::parse("3/10"), Rational(3, 10));
  EXPECT_EQ(Rational::parse("1"), Rational(1));
  EXPECT_EQ(Rational::parse("-0.25"), Rational(-1, 4));
  EXPECT_EQ(Rational::parse(".5"), Rational(1, 2));
  EXPECT_THROW(Rational::parse("abc"), ParameterError);
  EXPECT_THROW(Rational::parse(""), ParameterError);
  EXPECT_THROW(Rational::parse("1/0"), ParameterError);
}

TEST(DeriveParamsTest, Epsilon03AtN1024) {
  const auto p = derive_params(1024, Rational(3, 10));
  EXPECT_EQ(p.delta, Rational(2, 5));
  EXPECT_EQ(p.r, Rational(9, 5));
  EXPECT_EQ(p.eta, Rational(3, 5));
  EXPECT_EQ(p.heavy_threshold, 16u);
  EXPECT_EQ(p.ell, 160u);
  EXPECT_EQ(p.chain_length, 4u);  // ceil(1024^{0.2})
}

TEST(DeriveParamsTest, EpsilonZeroIsTheSquareRootPoint) {
  for (std::uint64_t n : {2u, 17u, 64u, 1000u}) {
    const auto p = derive_params(n, Rational(0));
    EXPECT_EQ(p.delta, Rational(1, 2));
    EXPECT_EQ(p.r, Rational(3, 2));
    EXPECT_EQ(p.eta, Rational(1, 2));
    EXPECT_EQ(p.query_exponent(), Rational(3, 2));
    EXPECT_EQ(p.space_exponent(), Rational(2));
    EXPECT_EQ(p.chain_length, 1u);
  }
  EXPECT_EQ(derive_params(64, Rational(0)).heavy_threshold, 8u);
}

TEST(DeriveParamsTest, EpsilonHalf) {
  const auto p = derive_params(4096, Rational(1, 2));
  EXPECT_EQ(p.delta, Rational(1, 3));
  EXPECT_EQ(p.r, Rational(2));
  EXPECT_EQ(p.eta, Rational(2, 3));
  EXPECT_EQ(p.space_exponent(), Rational(5, 3));
  EXPECT_EQ(p.heavy_threshold, 16u);  // 4096^{1/3}
}

TEST(DeriveParamsTest, RejectsEpsilonOutsideRange) {
  EXPECT_THROW(derive_params(100, Rational(3, 5)), ParameterError);
  EXPECT_THROW(derive_params(100, Rational(-1, 10)), ParameterError);
}

TEST(DeriveParamsTest, RepetitionProfiles) {
  const auto paper = derive_params(1024, Rational(0), Constants::paper());
  EXPECT_EQ(paper.heavy_reps, 20u);
  EXPECT_EQ(paper.partition_reps, 40u);
  EXPECT_EQ(paper.hash_prime_count, 20u);
  EXPECT_EQ(paper.heavy_budget, 26214400u);  // 8 * 1024^{1.5} * 10^2

  const auto desk = derive_params(1024, Rational(0));
  EXPECT_EQ(desk.heavy_reps, 20u);
  EXPECT_EQ(desk.partition_reps, 4u);
  EXPECT_EQ(desk.hash_prime_count, 2u);
  EXPECT_EQ(desk.max_query_size, 4096u);
}

TEST(DeriveParamsTest, CountsStayPositiveForTinyN) {
  const auto p = derive_params(1, Rational(0), Constants::paper());
  EXPECT_EQ(p.heavy_threshold, 1u);
  EXPECT_EQ(p.ell, 1u);
  EXPECT_EQ(p.heavy_reps, 1u);
  EXPECT_EQ(p.partition_reps, 1u);
  EXPECT_EQ(p.hash_prime_count, 1u);
  EXPECT_GE(p.heavy_budget, 1u);
}

// Exponent identities over random (n, eps) with eps = k / 600.
TEST(DeriveParamsTest, ExponentIdentitiesHoldExactly) {
  Rng rng(20261016);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t n = rng.in_range(2, 1u << 20);
    const Rational eps(static_cast<std::int64_t>(rng.below(301)), 600);
    const auto p = derive_params(n, eps);
    ASSERT_EQ(p.delta + p.eta, Rational(1));
    ASSERT_EQ(p.space_exponent(), Rational(2) - Rational(2) * eps / Rational(3));
    ASSERT_EQ(p.query_exponent(), Rational(3, 2) + eps);
    ASSERT_EQ(Rational(3) - p.r, Rational(3, 2) - eps);
    ASSERT_GE(p.heavy_threshold, 1u);
    ASSERT_GE(p.ell, p.heavy_threshold);
  }
}

TEST(CeilPowerTest, SnapsNearIntegers) {
  EXPECT_EQ(ceil_power(1024, Rational(2, 5)), 16u);
  EXPECT_EQ(ceil_power(1024, Rational(1, 5)), 4u);
  EXPECT_EQ(ceil_power(2048, Rational(1, 5)), 5u);
  EXPECT_EQ(ceil_power(10, Rational(3)), 1000u);
  EXPECT_EQ(ceil_power(7, Rational(0)), 1u);
}

TEST(NormalizeTest, ShiftsMinimumToOne) {
  const std::vector<std::int64_t> a{3, -5, 0}, b{1, 2};
  const Instance inst = normalize(a, b);
  EXPECT_EQ(inst.a, (std::vector<std::uint64_t>{1, 6, 9}));
  EXPECT_EQ(inst.offset_a, 6);
  EXPECT_EQ(inst.b, (std::vector<std::uint64_t>{1, 2}));
  EXPECT_EQ(inst.offset_b, 0);
  EXPECT_EQ(inst.n, 3u);
  EXPECT_EQ(inst.universe, 9u);
  EXPECT_EQ(inst.original_a(0), -5);
}

TEST(NormalizeTest, RejectsDuplicatesAndEmptySets) {
  const std::vector<std::int64_t> dup{7, 7}, ok{1}, empty;
  EXPECT_THROW(normalize(dup, ok), InputError);
  EXPECT_THROW(normalize(ok, empty), InputError);
}

TEST(NormalizeTest, RejectsValuesBeyondCapacity) {
  const std::vector<std::int64_t> wide{-(std::int64_t{1} << 61), std::int64_t{1} << 61}, ok{1};
  EXPECT_THROW(normalize(wide, ok), CapacityError);
  const std::vector<std::int64_t> huge{std::int64_t{1} << 62};
  EXPECT_THROW(normalize(huge, ok), CapacityError);
}

TEST(TranslateTest, Conventions) {
  Instance zero_offsets;
  EXPECT_EQ(translate_query_c(-3, zero_offsets, Convention::kZero), 3);
  EXPECT_EQ(translate_query_c(0, zero_offsets, Convention::kZero), 0);
  Instance shifted;
  shifted.offset_a = 6;
  EXPECT_EQ(translate_query_c(5, shifted, Convention::kSum), 11);
  EXPECT_EQ(translate_query_c(5, shifted, Convention::kZero), 1);
}

TEST(TranslateTest, SaturatesAtExtremes) {
  Instance shifted;
  shifted.offset_a = 10;
  EXPECT_EQ(translate_query_c(INT64_MAX, shifted, Convention::kSum), INT64_MAX);
  EXPECT_EQ(translate_query_c(INT64_MIN, shifted, Convention::kZero), INT64_MAX);
}

TEST(QueryInputTest, RejectsOutOfRangeIndices) {
  const std::vector<std::int64_t> a{1, 2}, b{3};
  const Instance inst = normalize(a, b);
  const std::vector<std::uint32_t> bad{2}, none;
  EXPECT_THROW(QueryInput::from_indices(inst, bad, none, {}), InputError);
  const auto q = QueryInput::from_indices(inst, none, none, {1, 2, 3, 4, 5});
  EXPECT_THROW(q.validate(inst, 4), InputError);
  EXPECT_NO_THROW(q.validate(inst, 5));
}

}  // namespace
}  // namespace sumsetds
