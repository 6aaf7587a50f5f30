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

#include <random>

#include <gtest/gtest.h>

#include "cnotsynth/errors.hpp"
#include "cnotsynth/steiner_ops.hpp"

namespace cnotsynth {
namespace {

std::vector<std::size_t> random_subset(std::size_t n, std::size_t exclude, std::mt19937_64& rng) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < n; ++v) {
    if (v != exclude && rng() % 3 == 0) out.push_back(v);
  }
  return out;
}

TEST(EliminateColumn, ClearsColumnWithGraphGates) {
  std::mt19937_64 rng(1);
  for (const auto& g : {path_graph(9), grid_graph({3, 4}), ibmq20_graph(), t20_graph()}) {
    const std::size_t n = g.num_vertices();
    for (int t = 0; t < 20; ++t) {
      auto m = random_invertible(n, rng);
      const auto before = m;
      const std::size_t i = find_non_cut_vertex(g);
      CnotCircuit ops(n);
      eliminate_column(m, g, i, [&](const CnotGate& gt) { ops.add(gt.control, gt.target); });
      EXPECT_EQ(m.column(i), BitVector::basis(n, i));
      EXPECT_TRUE(validate_circuit(g, ops));
      // The emitted ops, applied to the original rows, reproduce the new matrix.
      EXPECT_EQ(to_matrix(ops) * before, m);
    }
  }
}

TEST(EliminateColumn, ZeroColumnIsSingular) {
  auto m = GF2Matrix::from_rows({"10", "10"});
  EXPECT_THROW(eliminate_column(m, path_graph(2), 1, [](const CnotGate&) {}), SingularMatrixError);
}

TEST(EliminateRow, RowBecomesUnitVector) {
  std::mt19937_64 rng(2);
  const auto g = ibmq20_graph();
  for (int t = 0; t < 50; ++t) {
    auto m = random_invertible(20, rng);
    const std::size_t i = find_non_cut_vertex(g);
    eliminate_column(m, g, i, [](const CnotGate&) {});
    CnotCircuit ops(20);
    eliminate_row(m, g, i, [&](const CnotGate& gt) { ops.add(gt.control, gt.target); });
    EXPECT_EQ(m.row(i), BitVector::basis(20, i));
    EXPECT_EQ(m.column(i), BitVector::basis(20, i));
    EXPECT_TRUE(validate_circuit(g, ops));
  }
}

TEST(ParityFanout, TargetsGainSourceOthersRestored) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> bit(0, 1);
  for (const auto& g : {path_graph(10), grid_graph({4, 4}), ibmq20_graph(), t20_graph()}) {
    const std::size_t n = g.num_vertices();
    for (int t = 0; t < 200; ++t) {
      const std::size_t src = rng() % n;
      const auto targets = random_subset(n, src, rng);
      CnotCircuit c(n);
      parity_fanout(c, g, src, targets);
      EXPECT_TRUE(validate_circuit(g, c));
      BitVector x(n);
      for (std::size_t v = 0; v < n; ++v) x.set(v, bit(rng));
      BitVector expect = x;
      for (std::size_t v : targets) expect.set(v, expect.get(v) ^ x.get(src));
      EXPECT_EQ(simulate(c, x), expect);
    }
  }
}

TEST(ParityAccumulate, RootGainsParityWithinGateBound) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> bit(0, 1);
  const auto g = grid_graph({4, 5});
  for (int t = 0; t < 200; ++t) {
    const std::size_t root = rng() % 20;
    const auto terms = random_subset(20, root, rng);
    const auto gates = parity_accumulate_gates(g, root, terms);
    CnotCircuit c(20, gates);
    BitVector x(20);
    for (std::size_t v = 0; v < 20; ++v) x.set(v, bit(rng));
    BitVector expect = x;
    for (std::size_t v : terms) expect.set(root, expect.get(root) ^ x.get(v));
    EXPECT_EQ(simulate(c, x), expect);
    if (!terms.empty()) {
      EXPECT_LE(gates.size(), 4 * (steiner_tree_2approx(g, terms, root).size() - 1));
    }
  }
  EXPECT_THROW(parity_accumulate_gates(g, 3, {3}), std::invalid_argument);
}

}  // namespace
}  // namespace cnotsynth
