// Copyright 2026 The softwrist Authors
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

#include "softwrist/reports.hpp"

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "softwrist/error.hpp"

namespace softwrist {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("softwrist_reports_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(Factors, SweepOverConstraintBox) {
  const auto rows = factor_table(0.0, std::numbers::pi / 4, 100);
  ASSERT_EQ(rows.size(), 100u);
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, r.k1_abs_err);
  EXPECT_LE(worst, 5e-3);
  EXPECT_EQ(rows.front().alpha, 0.0);
  EXPECT_EQ(rows.back().alpha, std::numbers::pi / 4);
}

TEST(Factors, SinglePointAndBadRanges) {
  const auto one = factor_table(0.0, 0.0, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].k1_fit, 0.15085);
  EXPECT_THROW(factor_table(0.5, 0.2, 10), Error);
  EXPECT_THROW(factor_table(0.0, 1.6, 10), Error);
  EXPECT_THROW(factor_table(-0.1, 0.2, 10), Error);
  EXPECT_THROW(factor_table(0.0, 0.2, 0), Error);
}

TEST(Factors, CsvHeader) {
  const fs::path dir = scratch("factors");
  write_factors_csv(dir / "factors.csv", factor_table(0.0, 0.0, 1));
  const std::string text = slurp(dir / "factors.csv");
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "alpha,k1_exact,k1_fit,k2_fit,k6_fit,k7_fit,k1_abs_err");
  EXPECT_NE(text.find("0,0.15,0.15085,-0.00406,0.007175,-0.000235,0.00085"), std::string::npos);
}

TEST(Selftest, AllProblemsAgreeWithOracle) {
  const auto rows = qp_selftest(42, 100);
  ASSERT_EQ(rows.size(), 100u);
  for (const auto& r : rows) EXPECT_TRUE(r.pass) << r.index << " seed " << r.problem_seed;
  EXPECT_THROW(qp_selftest(42, 0), Error);
}

TEST(Selftest, CsvDeterministic) {
  const fs::path dir = scratch("selftest");
  write_selftest_csv(dir / "a.csv", qp_selftest(5, 30));
  write_selftest_csv(dir / "b.csv", qp_selftest(5, 30));
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
}

TEST(Trajectory, CsvSchema) {
  Trajectory tr;
  tr.samples.push_back({0.001, 0.610865, 0.1234567891234, 0.0, 2.5, 5.0, 1.0 / 3, 0.0, 4});
  const fs::path dir = scratch("traj");
  write_trajectory_csv(dir / "t.csv", tr);
  EXPECT_EQ(slurp(dir / "t.csv"),
            "t,alpha_ref,alpha,alpha_dot_ref,alpha_dot,y,F,eps,qp_iters\n"
            "0.001,0.610865,0.123456789,0,2.5,5,0.333333333,0,4\n");
}

TEST(Io, UnwritableDirectory) {
  EXPECT_THROW(prepare_output_dir("/proc/softwrist_cannot_exist"), Error);
  EXPECT_THROW(write_factors_csv("/proc/softwrist_nope/f.csv", {}), Error);
}

TEST(Reproduce, WritesSummaryAndIsByteDeterministic) {
  const fs::path a = scratch("repro_a"), b = scratch("repro_b");
  const ReproduceResult ra = reproduce(a, WristParams{}, MpcConfig{});
  reproduce(b, WristParams{}, MpcConfig{});
  ASSERT_EQ(ra.rows.size(), 5u);
  EXPECT_TRUE(ra.all_pass());
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++files;
    EXPECT_EQ(slurp(entry.path()), slurp(b / entry.path().filename())) << entry.path();
  }
  EXPECT_EQ(files, 5u + 3u);
  const std::string summary = slurp(a / "summary.csv");
  EXPECT_NE(summary.find("settling_reported"), std::string::npos);
  EXPECT_NE(summary.find(",1.2,1.5,"), std::string::npos);
}

}  // namespace
}  // namespace softwrist
