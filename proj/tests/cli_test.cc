// Copyright 2026 The Ganon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Drives the command-line tool end to end on the generated census fixture.

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "ganon/signal_io.h"
#include "json.hpp"
#include "tests/testing/italy_data.h"

namespace ganon {
namespace {

using ::ganon::testing::Round4;
using ::testing::ElementsAreArray;
using ::testing::HasSubstr;

namespace fs = std::filesystem;

std::string ReadAll(const fs::path& path) {
  std::ifstream input(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(input), {}};
}

struct Invocation {
  int exit_code = -1;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new fs::path(fs::temp_directory_path() /
                         absl::StrCat("ganon_cli_test_", getpid()));
    fs::remove_all(*dir_);
    fs::create_directories(*dir_);
    const std::string cmd = absl::StrCat("\"", GANON_FIXTURE_PATH, "\" \"",
                                         dir_->string(), "\"");
    ASSERT_EQ(std::system(cmd.c_str()), 0);
  }
  static void TearDownTestSuite() {
    fs::remove_all(*dir_);
    delete dir_;
  }

  static Invocation Ganon(const std::string& args) {
    const fs::path out = *dir_ / "stdout.txt";
    const fs::path err = *dir_ / "stderr.txt";
    const std::string cmd =
        absl::StrCat("\"", GANON_CLI_PATH, "\" ", args, " >\"", out.string(),
                     "\" 2>\"", err.string(), "\"");
    const int raw = std::system(cmd.c_str());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, ReadAll(out),
            ReadAll(err)};
  }

  static std::string Path(const std::string& name) {
    return absl::StrCat("\"", (*dir_ / name).string(), "\"");
  }

  static fs::path* dir_;
};

fs::path* CliTest::dir_ = nullptr;

TEST_F(CliTest, ExtractWritesSignals) {
  Invocation run = Ganon(absl::StrCat("extract --config ", Path("config.json"),
                               " --out ", Path("extract")));
  ASSERT_EQ(run.exit_code, 0) << run.err;
  EXPECT_THAT(run.out, HasSubstr("largest differences"));
  EXPECT_THAT(run.out, HasSubstr("0.0030"));

  std::ifstream q1(*dir_ / "extract" / "q1.csv");
  std::vector<double> males = *ReadSignalCsv(q1);
  ASSERT_EQ(males.size(), 20u);
  for (size_t i = 0; i < males.size(); ++i) {
    EXPECT_EQ(males[i], ::ganon::testing::kMalesInitial[i]) << i;
  }
  std::ifstream delta_in(*dir_ / "extract" / "delta.csv");
  std::vector<double> delta = *ReadSignalCsv(delta_in);
  for (size_t i = 0; i < delta.size(); ++i) {
    EXPECT_EQ(Round4(delta[i]), ::ganon::testing::kPrintedDelta[i]) << i;
  }
}

TEST_F(CliTest, MaskIsReproducible) {
  for (const char* out : {"mask_a", "mask_b"}) {
    Invocation run = Ganon(absl::StrCat("mask --config ", Path("config.json"),
                                 " --plan ", Path("db1.json"), " --out ",
                                 Path(out)));
    ASSERT_EQ(run.exit_code, 0) << run.err;
    EXPECT_THAT(run.out, HasSubstr("gamma1"));
  }
  size_t files = 0;
  for (const fs::directory_entry& entry :
       fs::directory_iterator(*dir_ / "mask_a")) {
    const fs::path other = *dir_ / "mask_b" / entry.path().filename();
    ASSERT_TRUE(fs::exists(other)) << other;
    EXPECT_EQ(ReadAll(entry.path()), ReadAll(other)) << other;
    ++files;
  }
  EXPECT_GE(files, 10u);
  nlohmann::json result =
      nlohmann::json::parse(ReadAll(*dir_ / "mask_a" / "result.json"));
  std::vector<int64_t> q1 = result["q1_tilde"];
  int64_t total = 0;
  for (int64_t v : q1) total += v;
  int64_t expected = 0;
  for (int64_t v : ::ganon::testing::kMalesInitial) expected += v;
  EXPECT_EQ(total, expected);
}

TEST_F(CliTest, MatrixExport) {
  Invocation run = Ganon(absl::StrCat("matrix --basis db2 --length 20 --level 2 "
                               "--out ",
                               Path("wrm.csv")));
  ASSERT_EQ(run.exit_code, 0) << run.err;
  std::vector<std::string> rows = absl::StrSplit(
      ReadAll(*dir_ / "wrm.csv"), '\n', absl::SkipEmpty());
  ASSERT_EQ(rows.size(), 20u);
  for (size_t r = 0; r < rows.size(); ++r) {
    std::vector<std::string> cells = absl::StrSplit(rows[r], ',');
    ASSERT_EQ(cells.size(), 5u);
    for (size_t c = 0; c < 5; ++c) {
      EXPECT_NEAR(std::stod(cells[c]),
                  ::ganon::testing::kPrintedWrmDb2[r][c], 5e-4)
          << r << "," << c;
    }
  }
}

TEST_F(CliTest, PlotWritesSvg) {
  std::ofstream(*dir_ / "signal.csv") << "0.1\n-0.2\n0.3\n";
  Invocation run = Ganon(absl::StrCat("plot --in ", Path("signal.csv"), " --out ",
                               Path("signal.svg"), " --title demo"));
  ASSERT_EQ(run.exit_code, 0) << run.err;
  std::string svg = ReadAll(*dir_ / "signal.svg");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_THAT(svg, HasSubstr(">demo</text>"));
}

TEST_F(CliTest, ErrorsExitWithMessage) {
  Invocation missing = Ganon(absl::StrCat("extract --config ", Path("absent.json"),
                                   " --out ", Path("x")));
  EXPECT_EQ(missing.exit_code, 1);
  EXPECT_EQ(missing.err.rfind("ganon: ", 0), 0u) << missing.err;
  EXPECT_THAT(missing.err, HasSubstr("absent.json"));

  std::ofstream(*dir_ / "bad_plan.json") << R"({"a_tilde": [1, 2]})";
  Invocation bad_plan = Ganon(absl::StrCat("mask --config ", Path("config.json"),
                                    " --plan ", Path("bad_plan.json"),
                                    " --out ", Path("bad")));
  EXPECT_EQ(bad_plan.exit_code, 1);
  EXPECT_THAT(bad_plan.err, HasSubstr("ganon: "));

  Invocation usage = Ganon("extract");
  EXPECT_NE(usage.exit_code, 0);
}

}  // namespace
}  // namespace ganon
