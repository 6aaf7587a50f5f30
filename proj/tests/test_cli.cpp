// Copyright 2026 The cnotsynth Authors
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

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cnotsynth/circuit.hpp"
#include "cnotsynth/cli.hpp"
#include "cnotsynth/gf2.hpp"
#include "cnotsynth/grid.hpp"

namespace cnotsynth {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("cnotsynth_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // Runs the binary with stdout and stderr captured to files; returns the exit code.
  int run(const std::string& args) {
    const std::string cmd = std::string(CNOTSYNTH_CLI_PATH) + " " + args + " >" + path("stdout.txt") +
                            " 2>" + path("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void write_matrix_file(const std::string& name, const GF2Matrix& m) {
    std::ofstream f(path(name));
    write_matrix(f, m);
  }

  fs::path dir_;
};

TEST_F(CliTest, VerifyAcceptsMatrixOfCircuit) {
  std::mt19937_64 rng(1);
  const auto g = athens5_graph();
  CnotCircuit c(5);
  for (int k = 0; k < 30; ++k) {
    const auto es = g.edges();
    const auto [u, v] = es[rng() % es.size()];
    c.add(u, v);
  }
  {
    std::ofstream f(path("c.txt"));
    write_circuit(f, c);
  }
  write_matrix_file("m.txt", to_matrix(c));
  EXPECT_EQ(run("verify --circuit " + path("c.txt") + " --matrix " + path("m.txt") + " --graph preset:athens5"), 0);
  EXPECT_EQ(read("stdout.txt"), "EQUIVALENT\nVALID\n");

  write_matrix_file("i.txt", GF2Matrix::identity(5));
  EXPECT_EQ(run("verify --circuit " + path("c.txt") + " --matrix " + path("i.txt")), 1);
  EXPECT_EQ(read("stdout.txt"), "NOT EQUIVALENT\n");
}

TEST_F(CliTest, SynthRowcolRoundTrip) {
  std::mt19937_64 rng(2);
  write_matrix_file("m.txt", random_invertible(5, rng));
  ASSERT_EQ(run("synth --algo rowcol --graph preset:athens5 --matrix " + path("m.txt") + " --out " +
                path("c.txt") + " --stats " + path("s.json")),
            0);
  EXPECT_EQ(run("verify --circuit " + path("c.txt") + " --matrix " + path("m.txt") + " --graph preset:athens5"), 0);
  const auto stats = nlohmann::json::parse(read("s.json"));
  EXPECT_EQ(stats["schema"], 1);
  EXPECT_EQ(stats["algo"], "rowcol");
  EXPECT_EQ(stats["n"], 5);
  EXPECT_EQ(stats["strategy"], "mindeg");
  std::ifstream cf(path("c.txt"));
  EXPECT_EQ(stats["size"], read_circuit(cf).size());
}

TEST_F(CliTest, SynthSbeReportsParameters) {
  std::mt19937_64 rng(3);
  write_matrix_file("m.txt", random_invertible(16, rng));
  ASSERT_EQ(run("synth --algo sbe --graph complete16 --matrix " + path("m.txt") + " --out " + path("c.txt") +
                " --stats " + path("s.json")),
            0);
  const auto stats = nlohmann::json::parse(read("s.json"));
  EXPECT_EQ(stats["label"], "sbe");
  const auto p = choose_params(complete_graph(16));
  EXPECT_EQ(stats["k"], p.k);
  EXPECT_EQ(stats["s"], p.s);
  EXPECT_EQ(run("verify --circuit " + path("c.txt") + " --matrix " + path("m.txt") + " --graph complete16"), 0);
}

TEST_F(CliTest, SynthGridDepthStats) {
  std::mt19937_64 rng(4);
  write_matrix_file("m.txt", random_invertible(4, rng));
  ASSERT_EQ(run("synth --algo grid-depth --grid 4x4 --matrix " + path("m.txt") + " --out " + path("c.txt") +
                " --stats " + path("s.json")),
            0);
  const auto stats = nlohmann::json::parse(read("s.json"));
  EXPECT_EQ(stats["ancillas"], 12);
  const auto wires = stats["data_wires"].get<std::vector<std::size_t>>();
  EXPECT_EQ(wires, make_grid_layout(4, 4, 4).data_wires());
  std::string list;
  for (std::size_t w : wires) list += (list.empty() ? "" : ",") + std::to_string(w);
  EXPECT_EQ(run("verify --circuit " + path("c.txt") + " --matrix " + path("m.txt") + " --graph grid4x4 --data-wires " +
                list),
            0);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run("synth --bogus"), 2);
  EXPECT_NE(read("stderr.txt").find("cnotsynth: error: usage"), std::string::npos);
  EXPECT_EQ(run(""), 2);
  write_matrix_file("m.txt", GF2Matrix::identity(3));
  EXPECT_EQ(run("synth --algo magic --graph path3 --matrix " + path("m.txt")), 2);
  EXPECT_EQ(run("synth --algo grid-depth --matrix " + path("m.txt")), 2);
}

TEST_F(CliTest, InputErrors) {
  {
    std::ofstream f(path("sing.txt"));
    f << "3\n110\n110\n001\n";
  }
  EXPECT_EQ(run("synth --algo rowcol --graph path3 --matrix " + path("sing.txt")), 2);
  EXPECT_NE(read("stderr.txt").find("singular"), std::string::npos);
  {
    std::ofstream f(path("bad.txt"));
    f << "3\n1x0\n";
  }
  EXPECT_EQ(run("synth --algo rowcol --graph path3 --matrix " + path("bad.txt")), 2);
  {
    std::ofstream f(path("split.txt"));
    f << "4 2\n0 1\n2 3\n";
  }
  write_matrix_file("i.txt", GF2Matrix::identity(4));
  EXPECT_EQ(run("synth --algo rowcol --graph " + path("split.txt") + " --matrix " + path("i.txt")), 2);
  EXPECT_NE(read("stderr.txt").find("disconnected"), std::string::npos);
}

TEST_F(CliTest, GraphRoundTrip) {
  ASSERT_EQ(run("graph --preset ibmq20 --out " + path("g.txt")), 0);
  std::ifstream in(path("g.txt"));
  const auto g = read_edge_list(in);
  EXPECT_EQ(g.num_vertices(), 20u);
  EXPECT_EQ(g.edges(), ibmq20_graph().edges());
}

TEST_F(CliTest, Oracle) {
  ASSERT_EQ(run("oracle --graph path --n 3 --csv " + path("o.csv")), 0);
  EXPECT_EQ(read("stdout.txt"), "matrices 168 (GL order 168) max distance 8\n");
  const std::string csv = read("o.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 169);
  EXPECT_EQ(run("oracle --n 5"), 2);
}

TEST_F(CliTest, BenchIsReproducible) {
  ASSERT_EQ(run("bench size --graphs t20 --sizes 20..22 --samples 3 --seed 5 --threads 2 --csv " + path("a.csv")), 0);
  ASSERT_EQ(run("bench size --graphs t20 --sizes 20..22 --samples 3 --seed 5 --threads 1 --csv " + path("b.csv")), 0);
  EXPECT_EQ(read("a.csv"), read("b.csv"));
  const std::string csv = read("a.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  ASSERT_EQ(run("bench depth --sides 2..3 --samples 2"), 0);
  EXPECT_NE(read("stderr.txt").find("seed"), std::string::npos);
}

TEST(CliParsers, Counts) {
  EXPECT_EQ(cli::parse_counts("1,3..5"), (std::vector<std::size_t>{1, 3, 4, 5}));
  EXPECT_EQ(cli::parse_grid("3x4"), (std::vector<std::size_t>{3, 4}));
  EXPECT_THROW(cli::parse_count("-1"), cli::UsageError);
  EXPECT_THROW(cli::parse_grid("3"), cli::UsageError);
}

}  // namespace
}  // namespace cnotsynth
