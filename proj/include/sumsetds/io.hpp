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


#ifndef SUMSETDS_IO_HPP_
#define SUMSETDS_IO_HPP_

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sumsetds/core.hpp"
#include "sumsetds/engine.hpp"

namespace sumsetds {

// Unreadable or unwritable files.
class IoError : public Error {
 public:
  using Error::Error;
};

// Text instance: "n <count>", "u <alpha>", then "A" and "B" sections with one
// decimal value per line.
struct InstanceFile {
  double alpha = 3.0;
  std::vector<std::int64_t> a;
  std::vector<std::int64_t> b;

  std::uint64_t n() const { return std::max(a.size(), b.size()); }
  Instance instance() const { return normalize(a, b); }

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

// Text query: "convention sum|zero", then "APRIME", "BPRIME" (indices) and
// "C" (signed values) sections.
struct QueryFile {
  Convention convention = Convention::kSum;
  std::vector<std::uint32_t> a_indices;
  std::vector<std::uint32_t> b_indices;
  std::vector<std::int64_t> c_values;

  QueryInput to_input(const Instance& inst) const {
    return QueryInput::from_indices(inst, a_indices, b_indices, c_values, convention);
  }

  friend bool operator==(const QueryFile&, const QueryFile&) = default;
};

namespace internal {

inline std::string shortest(double x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

template <class T>
T parse_number(std::string_view text, std::size_t line) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw FormatError("line " + std::to_string(line) + ": not a number: '" + std::string(text) + "'");
  return value;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  }

  std::string expect(std::string_view what) {
    std::string line;
    if (!next(line)) throw FormatError("unexpected end of file, expected " + std::string(what));
    return line;
  }

  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

// Splits "key value" and checks the key.
inline std::string_view keyed(const std::string& line, std::string_view key, std::size_t number) {
  if (line.size() <= key.size() + 1 || line.compare(0, key.size(), key) != 0 || line[key.size()] != ' ')
    throw FormatError("line " + std::to_string(number) + ": expected '" + std::string(key) + " <value>'");
  return std::string_view(line).substr(key.size() + 1);
}

inline std::ifstream open_in(const std::string& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

inline std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace internal

inline void write_instance(std::ostream& out, const InstanceFile& file) {
  out << "n " << file.n() << '\n' << "u " << internal::shortest(file.alpha) << '\n' << "A\n";
  for (const auto v : file.a) out << v << '\n';
  out << "B\n";
  for (const auto v : file.b) out << v << '\n';
}

inline InstanceFile read_instance(std::istream& in) {
  internal::LineReader reader(in);
  InstanceFile file;
  const auto n = internal::parse_number<std::uint64_t>(internal::keyed(reader.expect("n"), "n", reader.number()),
                                                       reader.number());
  file.alpha =
      internal::parse_number<double>(internal::keyed(reader.expect("u"), "u", reader.number()), reader.number());
  if (reader.expect("A") != "A") throw FormatError("line " + std::to_string(reader.number()) + ": expected 'A'");
  std::vector<std::int64_t>* target = &file.a;
  std::string line;
  while (reader.next(line)) {
    if (line == "B" && target == &file.a) {
      target = &file.b;
      continue;
    }
    target->push_back(internal::parse_number<std::int64_t>(line, reader.number()));
  }
  if (target != &file.b) throw FormatError("missing 'B' section");
  if (file.n() != n)
    throw FormatError("header says n = " + std::to_string(n) + " but the sets hold " + std::to_string(file.n()));
  return file;
}

inline void write_query(std::ostream& out, const QueryFile& file) {
  out << "convention " << (file.convention == Convention::kSum ? "sum" : "zero") << '\n' << "APRIME\n";
  for (const auto i : file.a_indices) out << i << '\n';
  out << "BPRIME\n";
  for (const auto j : file.b_indices) out << j << '\n';
  out << "C\n";
  for (const auto c : file.c_values) out << c << '\n';
}

inline QueryFile read_query(std::istream& in) {
  internal::LineReader reader(in);
  QueryFile file;
  const std::string convention(internal::keyed(reader.expect("convention"), "convention", reader.number()));
  if (convention == "sum") {
    file.convention = Convention::kSum;
  } else if (convention == "zero") {
    file.convention = Convention::kZero;
  } else {
    throw FormatError("unknown convention '" + convention + "'");
  }
  if (reader.expect("APRIME") != "APRIME") throw FormatError("expected 'APRIME'");
  int section = 0;
  std::string line;
  while (reader.next(line)) {
    if (section == 0 && line == "BPRIME") {
      section = 1;
    } else if (section == 1 && line == "C") {
      section = 2;
    } else if (section == 2) {
      file.c_values.push_back(internal::parse_number<std::int64_t>(line, reader.number()));
    } else {
      (section == 0 ? file.a_indices : file.b_indices)
          .push_back(internal::parse_number<std::uint32_t>(line, reader.number()));
    }
  }
  if (section != 2) throw FormatError("query file needs APRIME, BPRIME and C sections");
  return file;
}

inline InstanceFile load_instance(const std::string& path) {
  auto in = internal::open_in(path);
  return read_instance(in);
}

inline void save_instance(const std::string& path, const InstanceFile& file) {
  auto out = internal::open_out(path);
  write_instance(out, file);
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline QueryFile load_query(const std::string& path) {
  auto in = internal::open_in(path);
  return read_query(in);
}

inline void save_query(const std::string& path, const QueryFile& file) {
  auto out = internal::open_out(path);
  write_query(out, file);
  if (!out) throw IoError("write to '" + path + "' failed");
}

// Binary layout, all integers little-endian u64 unless noted:
//   magic "SUMSETDS" (8 bytes), version (u32)
//   params: n, epsilon num, epsilon den, the five constants as IEEE-754 bit
//           patterns, universe exponent bits, repetition scaling
//   then four components, each as a u64 byte length followed by its payload:
//   instance, heavy stage, non-heavy stage, build report.
inline constexpr std::array<char, 8> kMagic = {'S', 'U', 'M', 'S', 'E', 'T', 'D', 'S'};
inline constexpr std::uint32_t kFormatVersion = 1;

namespace internal {

class ByteWriter {
 public:
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void raw(const char* data, std::size_t size) { bytes_.insert(bytes_.end(), data, data + size); }

  template <class T, class Put>
  void seq(const std::vector<T>& values, Put put) {
    u64(values.size());
    for (const auto& v : values) put(*this, v);
  }
  void u64s(const std::vector<std::uint64_t>& v) { seq(v, [](ByteWriter& w, std::uint64_t x) { w.u64(x); }); }
  void u32s(const std::vector<std::uint32_t>& v) { seq(v, [](ByteWriter& w, std::uint32_t x) { w.u32(x); }); }

  void component(const ByteWriter& inner) {
    u64(inner.bytes_.size());
    raw(inner.bytes_.data(), inner.bytes_.size());
  }

  const std::string& bytes() const { return bytes_; }

 private:
  std::string bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    pos_ += 8;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    pos_ += 4;
    return v;
  }
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  double f64() { return std::bit_cast<double>(u64()); }

  std::string_view raw(std::size_t size) {
    need(size);
    const auto out = bytes_.substr(pos_, size);
    pos_ += size;
    return out;
  }

  // Element count bounded by the remaining bytes.
  std::uint64_t count(std::size_t min_element_size) {
    const std::uint64_t n = u64();
    if (n > (bytes_.size() - pos_) / std::max<std::size_t>(min_element_size, 1))
      throw FormatError("sequence length " + std::to_string(n) + " exceeds the remaining data");
    return n;
  }
  std::vector<std::uint64_t> u64s() {
    std::vector<std::uint64_t> v(count(8));
    for (auto& x : v) x = u64();
    return v;
  }
  std::vector<std::uint32_t> u32s() {
    std::vector<std::uint32_t> v(count(4));
    for (auto& x : v) x = u32();
    return v;
  }

  ByteReader component() { return ByteReader(raw(u64())); }

  void finish() const {
    if (pos_ != bytes_.size()) throw FormatError("trailing bytes in component");
  }

 private:
  void need(std::size_t size) const {
    if (bytes_.size() - pos_ < size) throw FormatError("truncated structure data");
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

inline void put_hash(ByteWriter& w, const AffineHash& h) {
  w.u64(h.a);
  w.u64(h.b);
  w.u64(h.q);
  w.u64(h.m);
}

inline AffineHash get_hash(ByteReader& r) {
  AffineHash h;
  h.a = r.u64();
  h.b = r.u64();
  h.q = r.u64();
  h.m = r.u64();
  if (h.q == 0 || h.m == 0) throw FormatError("hash with zero modulus");
  return h;
}

inline ByteWriter encode_instance(const Instance& inst) {
  ByteWriter w;
  w.u64s(inst.a);
  w.u64s(inst.b);
  w.u64(inst.n);
  w.u64(inst.universe);
  w.i64(inst.offset_a);
  w.i64(inst.offset_b);
  return w;
}

inline Instance decode_instance(ByteReader r) {
  Instance inst;
  inst.a = r.u64s();
  inst.b = r.u64s();
  inst.n = r.u64();
  inst.universe = r.u64();
  inst.offset_a = r.i64();
  inst.offset_b = r.i64();
  r.finish();
  if (inst.a.empty() || inst.b.empty() || inst.n != std::max(inst.a.size(), inst.b.size()))
    throw FormatError("inconsistent instance component");
  if (!std::is_sorted(inst.a.begin(), inst.a.end()) || !std::is_sorted(inst.b.begin(), inst.b.end()))
    throw FormatError("instance values are not sorted");
  return inst;
}

inline ByteWriter encode_heavy(const HeavyStage& stage) {
  ByteWriter w;
  w.u64(stage.threshold);
  w.u64s(stage.hitters.members);
  w.u64(stage.hitters.max_sum);
  w.u64(stage.reps.size());
  for (const auto& fp : stage.reps) {
    w.u64(fp.p);
    w.u64s(fp.offsets);
    w.seq(fp.pairs, [](ByteWriter& out, const IndexPair& pair) {
      out.u32(pair.a_index);
      out.u32(pair.b_index);
    });
  }
  return w;
}

inline HeavyStage decode_heavy(ByteReader r, const Instance& inst) {
  HeavyStage stage;
  stage.threshold = r.u64();
  stage.hitters.members = r.u64s();
  stage.hitters.max_sum = r.u64();
  stage.reps.resize(r.count(16));
  for (auto& fp : stage.reps) {
    fp.p = r.u64();
    fp.offsets = r.u64s();
    fp.pairs.resize(r.count(8));
    for (auto& pair : fp.pairs) {
      pair.a_index = r.u32();
      pair.b_index = r.u32();
      if (pair.a_index >= inst.a.size() || pair.b_index >= inst.b.size())
        throw FormatError("false-positive pair index out of range");
    }
    if (fp.offsets.size() != stage.hitters.members.size() + 1 || fp.offsets.back() != fp.pairs.size() ||
        !std::is_sorted(fp.offsets.begin(), fp.offsets.end()))
      throw FormatError("inconsistent false-positive offsets");
  }
  r.finish();
  return stage;
}

inline ByteWriter encode_nonheavy(const NonHeavyStage& stage) {
  ByteWriter w;
  w.u64(stage.chain_length);
  w.u64(stage.reps.size());
  for (const auto& rep : stage.reps) {
    w.u64(rep.partition.parts.size());
    w.u32s(rep.partition.assignment);
    w.u64s(rep.primes);
    w.u32s(rep.table_offsets);
    w.u64(rep.max_in_degree);
    w.u64(rep.tables.size());
    for (const auto& table : rep.tables) {
      const auto& c = table.config;
      for (const auto v : {c.domain_size, c.max_in_degree, c.chain_length, c.table_count, c.chains_per_table,
                           c.false_alarm_cap})
        w.u64(v);
      put_hash(w, table.codomain);
      w.u64(table.tables.size());
      for (const auto& ct : table.tables) {
        put_hash(w, ct.rerandomizer);
        w.seq(ct.chains, [](ByteWriter& out, const Chain& chain) {
          out.u32(chain.endpoint);
          out.u32(chain.start);
        });
      }
    }
  }
  return w;
}

inline NonHeavyStage decode_nonheavy(ByteReader r, const Instance& inst) {
  NonHeavyStage stage;
  stage.chain_length = r.u64();
  stage.reps.resize(r.count(8));
  for (auto& rep : stage.reps) {
    const std::uint64_t ell = r.u64();
    rep.partition.assignment = r.u32s();
    if (ell == 0 || ell > inst.a.size() * 64 + 64 || rep.partition.assignment.size() != inst.a.size())
      throw FormatError("inconsistent partition");
    rep.partition.parts.resize(ell);
    for (std::uint32_t i = 0; i < rep.partition.assignment.size(); ++i) {
      if (rep.partition.assignment[i] >= ell) throw FormatError("partition part out of range");
      rep.partition.parts[rep.partition.assignment[i]].push_back(i);
    }
    rep.primes = r.u64s();
    rep.table_offsets = r.u32s();
    rep.max_in_degree = r.u64();
    rep.tables.resize(r.count(80));
    if (rep.table_offsets.size() != ell + 1 || rep.table_offsets.back() != rep.tables.size() ||
        !std::is_sorted(rep.table_offsets.begin(), rep.table_offsets.end()))
      throw FormatError("inconsistent table offsets");
    for (auto& table : rep.tables) {
      auto& c = table.config;
      for (auto* field : {&c.domain_size, &c.max_in_degree, &c.chain_length, &c.table_count, &c.chains_per_table,
                          &c.false_alarm_cap})
        *field = r.u64();
      c.validate();
      table.codomain = get_hash(r);
      table.tables.resize(r.count(40));
      for (auto& ct : table.tables) {
        ct.rerandomizer = get_hash(r);
        ct.chains.resize(r.count(8));
        for (auto& chain : ct.chains) {
          chain.endpoint = r.u32();
          chain.start = r.u32();
          if (chain.start >= c.domain_size) throw FormatError("chain start outside the domain");
        }
      }
    }
  }
  r.finish();
  return stage;
}

inline ByteWriter encode_report(const BuildReport& report) {
  ByteWriter w;
  for (const auto v : {report.seed, report.core_words, report.heavy_words, report.nonheavy_words,
                       report.heavy_hitters, report.false_positives, report.inversion_tables})
    w.u64(v);
  w.f64(report.slack);
  w.i64(report.polylog_power);
  return w;
}

inline BuildReport decode_report(ByteReader r) {
  BuildReport report;
  for (auto* field : {&report.seed, &report.core_words, &report.heavy_words, &report.nonheavy_words,
                      &report.heavy_hitters, &report.false_positives, &report.inversion_tables})
    *field = r.u64();
  report.slack = r.f64();
  report.polylog_power = static_cast<int>(r.i64());
  r.finish();
  return report;
}

}  // namespace internal

inline std::string serialize(const PreprocessedStructure& ds) {
  internal::ByteWriter w;
  w.raw(kMagic.data(), kMagic.size());
  w.u32(kFormatVersion);
  w.u64(ds.params.n);
  w.i64(ds.params.epsilon.num());
  w.i64(ds.params.epsilon.den());
  const Constants& k = ds.constants;
  for (const double v : {k.heavy_reps, k.hash_primes, k.heavy_budget, k.query_size, k.partition_reps,
                         k.universe_exponent})
    w.f64(v);
  w.u64(static_cast<std::uint64_t>(k.scaling));
  w.component(internal::encode_instance(ds.instance));
  w.component(internal::encode_heavy(ds.heavy));
  w.component(internal::encode_nonheavy(ds.nonheavy));
  w.component(internal::encode_report(ds.report));
  return w.bytes();
}

inline PreprocessedStructure deserialize(std::string_view bytes) {
  internal::ByteReader r(bytes);
  if (bytes.size() < kMagic.size() || std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0)
    throw FormatError("not a sumsetds structure (bad magic)");
  r.raw(kMagic.size());
  const std::uint32_t version = r.u32();
  if (version != kFormatVersion)
    throw FormatError("unsupported structure version " + std::to_string(version) + ", expected " +
                      std::to_string(kFormatVersion));
  PreprocessedStructure ds;
  const std::uint64_t n = r.u64();
  const std::int64_t num = r.i64(), den = r.i64();
  if (den <= 0) throw FormatError("invalid epsilon denominator");
  Constants& k = ds.constants;
  for (double* field : {&k.heavy_reps, &k.hash_primes, &k.heavy_budget, &k.query_size, &k.partition_reps,
                        &k.universe_exponent})
    *field = r.f64();
  const std::uint64_t scaling = r.u64();
  if (scaling > static_cast<std::uint64_t>(RepetitionScaling::kLogarithmic))
    throw FormatError("unknown repetition scaling");
  k.scaling = static_cast<RepetitionScaling>(scaling);
  try {
    ds.params = derive_params(n, Rational(num, den), k);
  } catch (const ParameterError& e) {
    throw FormatError(std::string("invalid stored parameters: ") + e.what());
  }
  ds.instance = internal::decode_instance(r.component());
  if (ds.instance.n != n) throw FormatError("instance size does not match the stored parameters");
  ds.heavy = internal::decode_heavy(r.component(), ds.instance);
  ds.nonheavy = internal::decode_nonheavy(r.component(), ds.instance);
  ds.report = internal::decode_report(r.component());
  r.finish();
  return ds;
}

inline void save_structure(const std::string& path, const PreprocessedStructure& ds) {
  auto out = internal::open_out(path, std::ios::binary);
  const std::string bytes = serialize(ds);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline PreprocessedStructure load_structure(const std::string& path) {
  auto in = internal::open_in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return deserialize(buffer.str());
}

}  // namespace sumsetds

#endif  // SUMSETDS_IO_HPP_
