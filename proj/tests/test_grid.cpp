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
#include "cnotsynth/grid.hpp"

namespace cnotsynth {
namespace {

BitVector random_state(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> bit(0, 1);
  BitVector x(n);
  for (std::size_t i = 0; i < n; ++i) x.set(i, bit(rng));
  return x;
}

// Runs the circuit on a basis input and compares every wire with the
// expected column of m, ancillas included.
void expect_basis_behaviour(const GF2Matrix& m, const GridLayout& l, const CnotCircuit& c) {
  for (std::size_t j = 0; j < l.n; ++j) {
    BitVector in(l.num_wires());
    in.set(l.data_wire(j), true);
    const BitVector out = simulate(c, in);
    BitVector expect(l.num_wires());
    for (std::size_t i = 0; i < l.n; ++i) expect.set(l.data_wire(i), m.get(i, j));
    ASSERT_EQ(out, expect) << "basis input " << j;
  }
}

TEST(GridLayout, Bounds) {
  EXPECT_NO_THROW(make_grid_layout(4, 4, 4));
  EXPECT_THROW(make_grid_layout(4, 3, 3), std::invalid_argument);    // 9 < 12
  EXPECT_THROW(make_grid_layout(4, 4, 5), std::invalid_argument);    // 20 > 16
  EXPECT_THROW(make_grid_layout(5, 4, 4), std::invalid_argument);    // enough cells, no work column
  EXPECT_NO_THROW(make_grid_layout(7, 7, 3));
  const auto l = make_grid_layout(6, 3, 6);
  EXPECT_EQ(l.w, 2u);
  EXPECT_EQ(l.s, 2u);
  EXPECT_EQ(l.role(0, 0), CellRole::kInput);
  EXPECT_EQ(l.role(0, 2), CellRole::kWork);
  EXPECT_EQ(l.role(2, 5), CellRole::kOutput);
  const auto p = make_grid_layout(5, 3, 7);
  EXPECT_EQ(p.role(2, 1), CellRole::kIdle);
  EXPECT_EQ(p.role(2, 6), CellRole::kIdle);
}

TEST(GridLayout, FoldedAxisKeepsNeighboursAdjacent) {
  const auto l = make_grid_layout(9, std::vector<std::size_t>{3, 3, 3});
  const auto g = l.graph();
  for (std::size_t r = 0; r < l.m1; ++r) {
    for (std::size_t c = 0; c < l.m2; ++c) {
      if (c + 1 < l.m2) {
        EXPECT_TRUE(g.has_edge(l.wire(r, c), l.wire(r, c + 1)));
      }
      if (r + 1 < l.m1) {
        EXPECT_TRUE(g.has_edge(l.wire(r, c), l.wire(r + 1, c)));
      }
    }
  }
  const auto l4 = make_grid_layout(8, std::vector<std::size_t>{2, 2, 3, 2});
  const auto g4 = l4.graph();
  for (std::size_t c = 0; c + 1 < l4.m2; ++c) EXPECT_TRUE(g4.has_edge(l4.wire(1, c), l4.wire(1, c + 1)));
}

TEST(CopyFanout, PathOfThree) {
  CnotCircuit c(3);
  copy_fanout({1, 3}, {0, 0}, {0, 0}, {0, 2}, [&](const CnotGate& g) { c.add(g.control, g.target); });
  EXPECT_EQ(c, CnotCircuit(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(depth(c), 2u);
}

TEST(CopyFanout, CornerOfThreeByThreeWithinDepthBound) {
  CnotCircuit c(9);
  copy_fanout({3, 3}, {0, 0}, {0, 0}, {2, 2}, [&](const CnotGate& g) { c.add(g.control, g.target); });
  EXPECT_LE(depth(c), 4u);
  BitVector in(9);
  in.set(0, true);
  BitVector all(9);
  for (std::size_t v = 0; v < 9; ++v) all.set(v, true);
  EXPECT_EQ(simulate(c, in), all);
  EXPECT_TRUE(validate_circuit(grid_graph({3, 3}), c));
}

TEST(CopyFanout, RandomBoxesCopyAndUndo) {
  std::mt19937_64 rng(1);
  const std::vector<std::size_t> dims{3, 4, 3};
  const auto g = grid_graph(dims);
  for (int t = 0; t < 300; ++t) {
    GridCoord lo(3), hi(3), src(3);
    for (std::size_t k = 0; k < 3; ++k) {
      std::size_t a = rng() % dims[k], b = rng() % dims[k];
      lo[k] = std::min(a, b);
      hi[k] = std::max(a, b);
      src[k] = lo[k] + rng() % (hi[k] - lo[k] + 1);
    }
    CnotCircuit c(36);
    copy_fanout(dims, src, lo, hi, [&](const CnotGate& gt) { c.add(gt.control, gt.target); });
    ASSERT_TRUE(validate_circuit(g, c));
    std::size_t side_sum = 0;
    for (std::size_t k = 0; k < 3; ++k) side_sum += hi[k] - lo[k];
    EXPECT_LE(depth(c), side_sum);
    // Box cells start at 0; everything outside is arbitrary and must survive.
    BitVector x = random_state(36, rng);
    BitVector expect = x;
    for (std::size_t v = 0; v < 36; ++v) {
      const auto p = grid_coord(dims, v);
      bool inside = true;
      for (std::size_t k = 0; k < 3; ++k) inside = inside && p[k] >= lo[k] && p[k] <= hi[k];
      if (inside && v != grid_index(dims, src)) {
        x.set(v, false);
        expect.set(v, x.get(grid_index(dims, src)));
      }
    }
    ASSERT_EQ(simulate(c, x), expect);
    ASSERT_EQ(simulate(c.reversed(), expect), x);
  }
}

TEST(CopyFanout, RejectsSourceOutsideBox) {
  EXPECT_THROW(copy_fanout({3, 3}, {0, 0}, {1, 1}, {2, 2}, [](const CnotGate&) {}), std::invalid_argument);
  EXPECT_THROW(copy_fanout({3, 3}, {0, 0}, {0, 0}, {3, 2}, [](const CnotGate&) {}), std::invalid_argument);
}

TEST(ParityAddGrid, PathOfThree) {
  CnotCircuit c(3);
  parity_add_grid({1, 3}, {{0, 0}, {0, 1}}, {0, 2}, [&](const CnotGate& g) { c.add(g.control, g.target); });
  for (unsigned v = 0; v < 8; ++v) {
    BitVector x(3);
    for (std::size_t i = 0; i < 3; ++i) x.set(i, (v >> i) & 1U);
    BitVector expect = x;
    expect.set(2, x.get(2) ^ x.get(0) ^ x.get(1));
    EXPECT_EQ(simulate(c, x), expect);
  }
}

TEST(ParityAddGrid, TwoByTwoAllInputs) {
  CnotCircuit c(4);
  parity_add_grid({2, 2}, {{0, 0}, {0, 1}, {1, 0}}, {1, 1}, [&](const CnotGate& g) { c.add(g.control, g.target); });
  EXPECT_TRUE(validate_circuit(grid_graph({2, 2}), c));
  for (unsigned v = 0; v < 16; ++v) {
    BitVector x(4);
    for (std::size_t i = 0; i < 4; ++i) x.set(i, (v >> i) & 1U);
    BitVector expect = x;
    expect.set(3, x.get(3) ^ x.get(0) ^ x.get(1) ^ x.get(2));
    EXPECT_EQ(simulate(c, x), expect);
  }
}

TEST(ParityAddGrid, EmptySetAndAccumulatorConflict) {
  std::size_t gates = 0;
  parity_add_grid({3, 3}, {}, {1, 1}, [&](const CnotGate&) { ++gates; });
  EXPECT_EQ(gates, 0u);
  EXPECT_THROW(parity_add_grid({3, 3}, {{1, 1}}, {1, 1}, [](const CnotGate&) {}), std::invalid_argument);
}

TEST(ParityAddGrid, RandomSetsRestoreOtherCells) {
  std::mt19937_64 rng(2);
  const std::vector<std::size_t> dims{4, 3, 3};
  const auto g = grid_graph(dims);
  for (int t = 0; t < 300; ++t) {
    const std::size_t y = rng() % 36;
    std::vector<GridCoord> set;
    for (std::size_t v = 0; v < 36; ++v) {
      if (v != y && rng() % 4 == 0) set.push_back(grid_coord(dims, v));
    }
    CnotCircuit c(36);
    parity_add_grid(dims, set, grid_coord(dims, y), [&](const CnotGate& gt) { c.add(gt.control, gt.target); });
    ASSERT_TRUE(validate_circuit(g, c));
    EXPECT_LE(depth(c), 8u * (4 + 3 + 3));
    const BitVector x = random_state(36, rng);
    BitVector expect = x;
    bool parity = x.get(y);
    for (const auto& p : set) parity ^= x.get(grid_index(dims, p));
    expect.set(y, parity);
    ASSERT_EQ(simulate(c, x), expect);
  }
}

TEST(GridDepth, FourOnFourByFourBasisInputs) {
  std::mt19937_64 rng(3);
  const auto l = make_grid_layout(4, 4, 4);
  for (int t = 0; t < 20; ++t) {
    const auto m = random_invertible(4, rng);
    const auto c = synthesize_grid_depth(m, l);
    EXPECT_TRUE(validate_circuit(l.graph(), c));
    expect_basis_behaviour(m, l, c);
  }
}

TEST(GridDepth, IdentityIsPureRelocation) {
  for (std::size_t n : {4u, 7u}) {
    const auto l = make_grid_layout(n, n, n);
    const auto c = synthesize_grid_depth(GF2Matrix::identity(n), l);
    EXPECT_TRUE(check_equivalent(GF2Matrix::identity(n), c, l.data_wires()));
    EXPECT_TRUE(validate_circuit(l.graph(), c));
  }
}

TEST(GridDepth, LayoutsWithSeveralInputColumns) {
  std::mt19937_64 rng(4);
  const std::vector<std::pair<std::size_t, std::vector<std::size_t>>> cases{
      {6, {3, 6}}, {6, {2, 9}}, {5, {2, 8}}, {7, {3, 7}}, {10, {4, 9}}, {8, {2, 3, 4}}, {9, {3, 3, 3}}};
  for (const auto& [n, dims] : cases) {
    const auto l = make_grid_layout(n, dims);
    for (int t = 0; t < 10; ++t) {
      const auto m = random_invertible(n, rng);
      const auto c = synthesize_grid_depth(m, l);
      ASSERT_TRUE(validate_circuit(l.graph(), c)) << n;
      expect_basis_behaviour(m, l, c);
    }
  }
}

TEST(GridDepth, DepthScalesWithSideNotArea) {
  // Depth <= C * n^2 / min(m1, m2) with C pinned from measurements (about 12.5 at n = 16..64).
  constexpr double kC = 16.0;
  std::mt19937_64 rng(5);
  for (std::size_t n : {16u, 36u, 64u}) {
    const auto l = make_grid_layout(n, n, n);
    const auto m = random_invertible(n, rng);
    const auto c = synthesize_grid_depth(m, l);
    EXPECT_TRUE(check_equivalent(m, c, l.data_wires()));
    EXPECT_LE(static_cast<double>(depth(c)), kC * static_cast<double>(n * n) / static_cast<double>(n));
  }
}

TEST(GridDepth, Errors) {
  const auto l = make_grid_layout(4, 4, 4);
  EXPECT_THROW(synthesize_grid_depth(GF2Matrix::identity(5), l), std::invalid_argument);
  EXPECT_THROW(synthesize_grid_depth(GF2Matrix::from_rows({"1100", "1100", "0010", "0001"}), l),
               SingularMatrixError);
}

}  // namespace
}  // namespace cnotsynth
