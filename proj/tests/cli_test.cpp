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


#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "sumsetds/bench.hpp"
#include "sumsetds/engine.hpp"
#include "sumsetds/io.hpp"
#include "sumsetds/oracle.hpp"

namespace sumsetds {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("sumsetds_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  CliRun run(const std::string& args, const std::string& env = "") const {
    const std::string out_file = path("stdout.txt");
    const std::string cmd = env + " " + SUMSETDS_CLI_PATH + " " + args + " > " + out_file + " 2> " + path("stderr.txt");
    const int status = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_file);
    return r;
  }

  static std::string slurp(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

TEST_F(CliTest, GenWritesAParsableInstance) {
  ASSERT_EQ(run("gen --n 4 --seed 7 --dist uniform --out " + path("i.txt")).code, 0);
  const InstanceFile f = load_instance(path("i.txt"));
  EXPECT_EQ(f.a.size(), 4u);
  EXPECT_EQ(f.b.size(), 4u);
  EXPECT_NO_THROW(f.instance());
}

TEST_F(CliTest, PlantedCompanionQueryHasYesTargets) {
  ASSERT_EQ(run("gen --n 50 --seed 2 --dist planted --plant 3 --out " + path("i.txt")).code, 0);
  const Instance inst = load_instance(path("i.txt")).instance();
  const QueryFile qf = load_query(path("i.txt.query"));
  const auto truth = oracle::oracle_query(inst, qf.to_input(inst));
  int yes = 0;
  for (const auto& v : truth.per_c) yes += v.yes;
  EXPECT_GE(yes, 3);
}

TEST_F(CliTest, FlagErrors) {
  EXPECT_EQ(run("gen --n 1 --out " + path("i.txt")).code, 3);
  EXPECT_EQ(run("gen --n 8 --dist zipf --out " + path("i.txt")).code, 3);
  EXPECT_EQ(run("frobnicate").code, 3);
  EXPECT_EQ(run("").code, 3);
  EXPECT_EQ(run("bench --ns 32,64 --epsilons 0 --trials 0").code, 3);
  ASSERT_EQ(run("gen --n 8 --out " + path("i.txt")).code, 0);
  EXPECT_EQ(run("build --in " + path("i.txt") + " --epsilon 0.6 --out " + path("d.bin")).code, 3);
  EXPECT_EQ(run("build --in " + path("i.txt") + " --epsilon abc --out " + path("d.bin")).code, 3);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(CliTest, IoAndFormatErrors) {
  EXPECT_EQ(run("build --in " + path("missing.txt") + " --out " + path("d.bin")).code, 2);
  std::ofstream(path("bad.txt")) << "n 2\nA\n1\n";
  EXPECT_EQ(run("build --in " + path("bad.txt") + " --out " + path("d.bin")).code, 2);

  ASSERT_EQ(run("gen --n 16 --dist planted --plant 2 --out " + path("i.txt")).code, 0);
  ASSERT_EQ(run("build --in " + path("i.txt") + " --out " + path("d.bin")).code, 0);
  std::string bytes = slurp(path("d.bin"));
  bytes[0] = 'Z';
  std::ofstream(path("tampered.bin"), std::ios::binary) << bytes;
  EXPECT_EQ(run("query --ds " + path("tampered.bin") + " --query " + path("i.txt.query")).code, 2);

  std::ofstream(path("far.query")) << "convention sum\nAPRIME\n99\nBPRIME\nC\n5\n";
  EXPECT_EQ(run("query --ds " + path("d.bin") + " --query " + path("far.query")).code, 2);
}

TEST_F(CliTest, BuildsAreByteIdentical) {
  ASSERT_EQ(run("gen --n 40 --dist heavytail --out " + path("i.txt")).code, 0);
  const auto first = run("build --in " + path("i.txt") + " --epsilon 3/10 --seed 4 --out " + path("a.bin"));
  const auto second = run("build --in " + path("i.txt") + " --epsilon 0.3 --seed 4 --out " + path("b.bin"));
  ASSERT_EQ(first.code, 0);
  ASSERT_EQ(second.code, 0);
  EXPECT_EQ(slurp(path("a.bin")), slurp(path("b.bin")));
  EXPECT_EQ(first.out.substr(0, 7), "40,0.3,");
}

TEST_F(CliTest, PlantedQueryVerifies) {
  ASSERT_EQ(run("gen --n 128 --seed 11 --dist planted --plant 8 --out " + path("i.txt")).code, 0);
  ASSERT_EQ(run("build --in " + path("i.txt") + " --epsilon 0.5 --out " + path("d.bin")).code, 0);
  const auto r = run("query --ds " + path("d.bin") + " --query " + path("i.txt.query") + " --verify --cost");
  EXPECT_EQ(r.code, 0) << slurp(path("stderr.txt"));
  std::istringstream lines(r.out);
  std::string line, last;
  int verdicts = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("cost,", 0) == 0) {
      last = line;
      continue;
    }
    ++verdicts;
    std::istringstream words(line);
    std::int64_t c = 0, a = 0, b = 0;
    std::string answer, tag;
    words >> c >> answer;
    if (words >> tag >> a >> b) {
      EXPECT_EQ(tag, "witness");
      EXPECT_EQ(a + b, c);
    }
  }
  EXPECT_EQ(verdicts, 16);
  EXPECT_EQ(std::count(last.begin(), last.end(), ','), 7);
}

TEST_F(CliTest, MismatchExitsWithOne) {
  ASSERT_EQ(run("gen --n 64 --seed 5 --dist planted --plant 4 --out " + path("i.txt")).code, 0);
  PreprocessedStructure ds = preprocess(load_instance(path("i.txt")).instance(), Rational(0), 1);
  for (auto& rep : ds.nonheavy.reps)
    for (auto& table : rep.tables)
      for (auto& ct : table.tables) ct.chains.clear();
  save_structure(path("blind.bin"), ds);
  const auto r = run("query --ds " + path("blind.bin") + " --query " + path("i.txt.query") + " --verify");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(slurp(path("stderr.txt")).find("mismatch at c="), std::string::npos);
  EXPECT_EQ(run("query --ds " + path("blind.bin") + " --query " + path("i.txt.query")).code, 0);
}

TEST_F(CliTest, SeedEnvironmentOverridesFlag) {
  ASSERT_EQ(run("gen --n 20 --seed 1 --out " + path("a.txt"), "SUMSETDS_SEED=99").code, 0);
  ASSERT_EQ(run("gen --n 20 --seed 2 --out " + path("b.txt"), "SUMSETDS_SEED=99").code, 0);
  ASSERT_EQ(run("gen --n 20 --seed 99 --out " + path("c.txt")).code, 0);
  ASSERT_EQ(run("gen --n 20 --seed 1 --out " + path("d.txt")).code, 0);
  EXPECT_EQ(slurp(path("a.txt")), slurp(path("b.txt")));
  EXPECT_EQ(slurp(path("a.txt")), slurp(path("c.txt")));
  EXPECT_NE(slurp(path("a.txt")), slurp(path("d.txt")));
  EXPECT_EQ(run("gen --n 20 --out " + path("e.txt"), "SUMSETDS_SEED=x1").code, 3);
}

TEST_F(CliTest, BenchWritesRowsAndSlopes) {
  const auto r = run("bench --ns 32,64 --epsilons 0,1/2 --trials 2 --queries 1 --out " + path("b.csv"));
  ASSERT_EQ(r.code, 0);
  const std::string csv = slurp(path("b.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kBenchHeader);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 9);
  EXPECT_NE(r.out.find("slope epsilon=0 "), std::string::npos);
  EXPECT_NE(r.out.find("slope epsilon=0.5 "), std::string::npos);
}

}  // namespace
}  // namespace sumsetds
