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

#ifndef SUMSETDS_CORE_HPP_
#define SUMSETDS_CORE_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sumsetds {

// Error hierarchy. The CLI maps these onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Out-of-range tuning parameter (epsilon, flag values).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Malformed input sets or queries (duplicates, bad indices).
class InputError : public Error {
 public:
  using Error::Error;
};

// A value does not fit the word-size arithmetic the structure relies on.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Unreadable or corrupt file.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Exact rational with 64-bit numerator and denominator, always reduced and
// with a positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT
  constexpr Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw ParameterError("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  // Parses "3/10", "0.3", "1" or "-0.25" exactly.
  static Rational parse(std::string_view text) {
    auto fail = [&]() -> Rational {
      throw ParameterError("not a rational number: '" + std::string(text) + "'");
    };
    if (text.empty()) return fail();
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
      std::int64_t num = 0, den = 0;
      const auto lhs = text.substr(0, slash), rhs = text.substr(slash + 1);
      if (std::from_chars(lhs.data(), lhs.data() + lhs.size(), num).ptr != lhs.data() + lhs.size() ||
          std::from_chars(rhs.data(), rhs.data() + rhs.size(), den).ptr != rhs.data() + rhs.size() ||
          den == 0)
        return fail();
      return Rational(num, den);
    }
    bool negative = false;
    std::size_t pos = 0;
    if (text[0] == '-' || text[0] == '+') {
      negative = text[0] == '-';
      pos = 1;
    }
    std::int64_t num = 0, den = 1;
    bool seen_digit = false, seen_point = false;
    for (; pos < text.size(); ++pos) {
      const char ch = text[pos];
      if (ch == '.' && !seen_point) {
        seen_point = true;
        continue;
      }
      if (ch < '0' || ch > '9') return fail();
      if (num > (std::numeric_limits<std::int64_t>::max() - 9) / 10 ||
          den > std::numeric_limits<std::int64_t>::max() / 10)
        return fail();
      num = num * 10 + (ch - '0');
      if (seen_point) den *= 10;
      seen_digit = true;
    }
    if (!seen_digit) return fail();
    return Rational(negative ? -num : num, den);
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  constexpr double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  constexpr bool is_integer() const { return den_ == 1; }

  std::string to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend constexpr Rational operator+(Rational x, Rational y) {
    return Rational(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
  }
  friend constexpr Rational operator-(Rational x, Rational y) {
    return Rational(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
  }
  friend constexpr Rational operator*(Rational x, Rational y) {
    return Rational(x.num_ * y.num_, x.den_ * y.den_);
  }
  friend constexpr Rational operator/(Rational x, Rational y) {
    return Rational(x.num_ * y.den_, x.den_ * y.num_);
  }
  friend constexpr bool operator==(Rational x, Rational y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend constexpr std::strong_ordering operator<=>(Rational x, Rational y) {
    return static_cast<__int128>(x.num_) * y.den_ <=> static_cast<__int128>(y.num_) * x.den_;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// How repetition counts grow with n.
enum class RepetitionScaling {
  // heavyReps = ceil(c_h log2 n); partition and prime counts are the bare
  // constants. Feasible at desk scale.
  kDesk,
  // Every repetition count is ceil(c * log2 n).
  kLogarithmic,
};

// Tunable constants. The asymptotic analysis fixes none of these.
struct Constants {
  double heavy_reps = 2.0;      // c_h
  double hash_primes = 2.0;     // c_p
  double heavy_budget = 8.0;    // c_b
  double query_size = 4.0;      // c_q, |C'| <= c_q * n
  double partition_reps = 4.0;  // c_r
  double universe_exponent = 3.0;
  RepetitionScaling scaling = RepetitionScaling::kDesk;

  static Constants paper() {
    Constants c;
    c.scaling = RepetitionScaling::kLogarithmic;
    return c;
  }

  friend bool operator==(const Constants&, const Constants&) = default;
};

// Ceil of a positive real that snaps values within 1e-9 (relative) of an
// integer onto that integer, so 1024^0.4 gives 16 rather than 17.
inline std::uint64_t snapped_ceil(double value) {
  if (!(value > 0)) return 0;
  const double nearest = std::round(value);
  if (std::fabs(value - nearest) <= 1e-9 * std::max(1.0, value)) return static_cast<std::uint64_t>(nearest);
  return static_cast<std::uint64_t>(std::ceil(value));
}

// ceil(n^x). Integer exponents are evaluated exactly.
inline std::uint64_t ceil_power(std::uint64_t n, Rational exponent) {
  if (exponent.is_integer() && exponent.num() >= 0) {
    std::uint64_t result = 1;
    for (std::int64_t i = 0; i < exponent.num(); ++i) {
      if (n != 0 && result > std::numeric_limits<std::uint64_t>::max() / n)
        throw CapacityError("n^x overflows 64 bits");
      result *= n;
    }
    return result;
  }
  return snapped_ceil(std::exp(exponent.to_double() * std::log(static_cast<double>(n))));
}

struct TradeoffParams {
  std::uint64_t n = 0;
  Rational epsilon;
  Rational delta;  // 1/2 - eps/3
  Rational r;      // 3/2 + eps
  Rational eta;    // 1/2 + eps/3
  std::uint64_t heavy_threshold = 1;  // ceil(n^delta)
  std::uint64_t ell = 1;              // ceil(n^delta log2 n)
  std::uint64_t heavy_reps = 1;
  std::uint64_t partition_reps = 1;
  std::uint64_t hash_prime_count = 1;
  std::uint64_t heavy_budget = 1;  // ceil(c_b n^{3-r} log2^2 n)
  std::uint64_t chain_length = 1;  // ceil(n^{eta-delta})
  std::uint64_t max_query_size = 1;

  // Space exponent 2 - eta + delta of the non-heavy tables.
  Rational space_exponent() const { return Rational(2) - eta + delta; }
  // Non-heavy query exponent 1 + 2 eta - delta.
  Rational query_exponent() const { return Rational(1) + Rational(2) * eta - delta; }

  friend bool operator==(const TradeoffParams&, const TradeoffParams&) = default;
};

inline TradeoffParams derive_params(std::uint64_t n, Rational epsilon, const Constants& constants = {}) {
  if (epsilon < Rational(0) || epsilon > Rational(1, 2))
    throw ParameterError("epsilon must lie in [0, 1/2], got " + epsilon.to_string());
  if (n < 1) throw ParameterError("n must be positive");

  TradeoffParams p;
  p.n = n;
  p.epsilon = epsilon;
  p.delta = Rational(1, 2) - epsilon / Rational(3);
  p.r = Rational(3, 2) + epsilon;
  p.eta = Rational(1, 2) + epsilon / Rational(3);

  const double log_n = std::log2(static_cast<double>(n));
  const auto at_least_one = [](std::uint64_t v) { return std::max<std::uint64_t>(v, 1); };
  const auto scaled = [&](double c, bool log_scaled) {
    return at_least_one(snapped_ceil(log_scaled ? c * log_n : c));
  };
  const bool log_scaled = constants.scaling == RepetitionScaling::kLogarithmic;

  const double n_delta = std::exp(p.delta.to_double() * std::log(static_cast<double>(n)));
  p.heavy_threshold = at_least_one(ceil_power(n, p.delta));
  p.ell = at_least_one(snapped_ceil(n_delta * log_n));
  p.heavy_reps = scaled(constants.heavy_reps, true);
  p.partition_reps = scaled(constants.partition_reps, log_scaled);
  p.hash_prime_count = scaled(constants.hash_primes, log_scaled);
  const double n_3r = std::exp((Rational(3) - p.r).to_double() * std::log(static_cast<double>(n)));
  p.heavy_budget = at_least_one(snapped_ceil(constants.heavy_budget * n_3r * log_n * log_n));
  p.chain_length = at_least_one(ceil_power(n, p.eta - p.delta));
  p.max_query_size = at_least_one(snapped_ceil(constants.query_size * static_cast<double>(n)));
  return p;
}

// Preprocessed universe: both sets shifted so their minima are 1.
struct Instance {
  std::vector<std::uint64_t> a;
  std::vector<std::uint64_t> b;
  std::uint64_t n = 0;
  std::uint64_t universe = 0;  // max element of A and B
  std::int64_t offset_a = 0;
  std::int64_t offset_b = 0;

  std::int64_t original_a(std::size_t i) const { return static_cast<std::int64_t>(a[i]) - offset_a; }
  std::int64_t original_b(std::size_t j) const { return static_cast<std::int64_t>(b[j]) - offset_b; }
  std::uint64_t max_sum() const { return a.back() + b.back(); }

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Elements are kept below 2^61 so that pair sums never overflow.
inline constexpr std::uint64_t kMaxUniverse = std::uint64_t{1} << 61;
inline constexpr std::int64_t kMaxRawMagnitude = std::int64_t{1} << 62;

namespace internal {

inline std::vector<std::uint64_t> shift_set(std::span<const std::int64_t> raw, char name, std::int64_t& offset) {
  if (raw.empty()) throw InputError(std::string("set ") + name + " is empty");
  std::vector<std::int64_t> sorted(raw.begin(), raw.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= kMaxRawMagnitude || sorted[i] <= -kMaxRawMagnitude)
      throw CapacityError(std::string("value out of 62-bit range in set ") + name);
    if (i > 0 && sorted[i] == sorted[i - 1])
      throw InputError(std::string("duplicate value ") + std::to_string(sorted[i]) + " in set " + name);
  }
  offset = 1 - sorted.front();
  const auto span = static_cast<std::uint64_t>(sorted.back() - sorted.front()) + 1;
  if (span > kMaxUniverse) throw CapacityError(std::string("set ") + name + " spans more than 2^61 values");
  std::vector<std::uint64_t> shifted(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) shifted[i] = static_cast<std::uint64_t>(sorted[i] + offset);
  return shifted;
}

}  // namespace internal

inline Instance normalize(std::span<const std::int64_t> raw_a, std::span<const std::int64_t> raw_b) {
  Instance inst;
  inst.a = internal::shift_set(raw_a, 'A', inst.offset_a);
  inst.b = internal::shift_set(raw_b, 'B', inst.offset_b);
  inst.n = std::max(inst.a.size(), inst.b.size());
  inst.universe = std::max(inst.a.back(), inst.b.back());
  return inst;
}

enum class Convention {
  kSum,   // a + b = c
  kZero,  // a + b + c = 0
};

// Maps a raw query value to the normalized sum-form target. Saturates at the
// int64 range; such targets never match a pair.
inline std::int64_t translate_query_c(std::int64_t c_raw, const Instance& inst, Convention convention) {
  __int128 target = c_raw;
  if (convention == Convention::kZero) target = -target;
  target += inst.offset_a;
  target += inst.offset_b;
  constexpr __int128 kLo = std::numeric_limits<std::int64_t>::min();
  constexpr __int128 kHi = std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(std::clamp(target, kLo, kHi));
}

struct QueryInput {
  std::vector<bool> a_prime;  // membership by index into Instance::a
  std::vector<bool> b_prime;
  std::vector<std::int64_t> c_prime;
  Convention convention = Convention::kSum;

  static QueryInput from_indices(const Instance& inst, std::span<const std::uint32_t> a_indices,
                                 std::span<const std::uint32_t> b_indices, std::vector<std::int64_t> c_values,
                                 Convention convention = Convention::kSum) {
    QueryInput q;
    q.a_prime.assign(inst.a.size(), false);
    q.b_prime.assign(inst.b.size(), false);
    for (auto i : a_indices) {
      if (i >= inst.a.size()) throw InputError("A' index " + std::to_string(i) + " out of range");
      q.a_prime[i] = true;
    }
    for (auto j : b_indices) {
      if (j >= inst.b.size()) throw InputError("B' index " + std::to_string(j) + " out of range");
      q.b_prime[j] = true;
    }
    q.c_prime = std::move(c_values);
    q.convention = convention;
    return q;
  }

  void validate(const Instance& inst, std::uint64_t max_query_size) const {
    if (a_prime.size() != inst.a.size() || b_prime.size() != inst.b.size())
      throw InputError("query membership sets do not match the instance");
    if (c_prime.size() > max_query_size)
      throw InputError("|C'| = " + std::to_string(c_prime.size()) + " exceeds the configured bound " +
                       std::to_string(max_query_size));
  }
};

struct Witness {
  std::uint32_t a_index = 0;
  std::uint32_t b_index = 0;
  std::uint64_t a = 0;  // normalized values
  std::uint64_t b = 0;

  friend bool operator==(const Witness&, const Witness&) = default;
};

enum class AnswerPath { kOutOfRange, kHeavy, kNonHeavy, kFallback, kOracle };

struct Verdict {
  std::int64_t c_value = 0;  // as supplied in the query
  bool yes = false;
  std::optional<Witness> witness;
  // Exact number of pairs in A' x B' summing to c; heavy and fallback paths only.
  std::optional<std::uint64_t> pair_count;
  AnswerPath path = AnswerPath::kOutOfRange;
};

// Machine-independent work counters. A probe is one associative lookup or
// one pair-membership check; an evaluation is one call of an inverted function.
struct WorkCounter {
  std::uint64_t probes = 0;
  std::uint64_t evaluations = 0;
  std::uint64_t histogram_units = 0;

  WorkCounter& operator+=(const WorkCounter& o) {
    probes += o.probes;
    evaluations += o.evaluations;
    histogram_units += o.histogram_units;
    return *this;
  }
  friend bool operator==(const WorkCounter&, const WorkCounter&) = default;
};

struct QueryAnswer {
  std::vector<Verdict> per_c;
  bool any_yes = false;
  bool fallback_used = false;
};

}  // namespace sumsetds

#endif  // SUMSETDS_CORE_HPP_
