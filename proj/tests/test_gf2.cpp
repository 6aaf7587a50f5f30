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
#include <sstream>

#include <gtest/gtest.h>

#include "cnotsynth/errors.hpp"
#include "cnotsynth/gf2.hpp"

namespace cnotsynth {
namespace {

// Plain dense reference product, independent of the packed implementation.
std::vector<std::vector<int>> dense(const GF2Matrix& m) {
  std::vector<std::vector<int>> d(m.size(), std::vector<int>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) d[i][j] = m.get(i, j);
  }
  return d;
}

TEST(BitVector, BasisAndXor) {
  auto a = BitVector::basis(70, 3);
  auto b = BitVector::basis(70, 69);
  a ^= b;
  EXPECT_EQ(a.count(), 2u);
  EXPECT_TRUE(a.get(69));
  EXPECT_EQ(BitVector::from_string("0101").to_string(), "0101");
}

TEST(GF2Matrix, ZeroSizeRejected) { EXPECT_THROW(GF2Matrix(0), std::invalid_argument); }

TEST(GF2Matrix, RaggedRowsRejected) {
  EXPECT_THROW(GF2Matrix::from_rows({"10", "1"}), ParseError);
}

TEST(GF2Matrix, RowAddAddsRows) {
  auto m = GF2Matrix::from_rows({"110", "011", "001"});
  auto r = row_add(m, 0, 1);
  EXPECT_EQ(r, GF2Matrix::from_rows({"110", "101", "001"}));
  EXPECT_THROW(row_add(m, 1, 1), std::invalid_argument);
  EXPECT_THROW(row_add(m, 0, 3), std::out_of_range);
}

TEST(GF2Matrix, ProductMatchesDenseReference) {
  std::mt19937_64 rng(11);
  for (std::size_t n : {1u, 5u, 64u, 65u, 130u}) {
    auto a = random_invertible(n, rng);
    auto b = random_invertible(n, rng);
    auto p = a * b;
    auto da = dense(a), db = dense(b);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        int s = 0;
        for (std::size_t k = 0; k < n; ++k) s ^= da[i][k] & db[k][j];
        ASSERT_EQ(p.get(i, j), s != 0);
      }
    }
  }
}

TEST(GF2Matrix, InverseTimesMatrixIsIdentity) {
  std::mt19937_64 rng(3);
  for (std::size_t n : {2u, 7u, 63u, 64u, 100u}) {
    for (int k = 0; k < 5; ++k) {
      auto m = random_invertible(n, rng);
      EXPECT_TRUE((m * inverse(m)).is_identity());
      EXPECT_TRUE((inverse(m) * m).is_identity());
    }
  }
}

TEST(GF2Matrix, SingularInverseThrows) {
  auto m = GF2Matrix::from_rows({"11", "11"});
  EXPECT_EQ(rank(m), 1u);
  EXPECT_FALSE(is_invertible(m));
  EXPECT_THROW(inverse(m), SingularMatrixError);
}

TEST(GF2Matrix, RankOfIdentityAndZero) {
  EXPECT_EQ(rank(GF2Matrix::identity(9)), 9u);
  EXPECT_EQ(rank(GF2Matrix(9)), 0u);
}

TEST(GF2Matrix, TransposeTwiceIsIdentityMap) {
  std::mt19937_64 rng(5);
  auto m = random_invertible(70, rng);
  EXPECT_EQ(m.transpose().transpose(), m);
  EXPECT_EQ(m.transpose().get(3, 60), m.get(60, 3));
}

TEST(SolveRowCombination, RowsXorToTarget) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 20;
    auto m = random_invertible(n, rng);
    auto inv = inverse(m);
    for (std::size_t i = 0; i < n; ++i) {
      if (!inv.get(i, i)) continue;
      const auto rows = solve_row_combination_from_inverse_row(inv.row(i), i);
      // XOR of rows in S' equals row i XOR e_i.
      BitVector acc(n);
      for (std::size_t j : rows) {
        EXPECT_NE(j, i);
        acc ^= m.row(j);
      }
      acc ^= m.row(i);
      EXPECT_EQ(acc, BitVector::basis(n, i));
    }
  }
}

TEST(SolveRowCombination, RejectsZeroDiagonalOfInverse) {
  EXPECT_THROW(solve_row_combination_from_inverse_row(BitVector::from_string("01"), 0), std::domain_error);
}

TEST(MatrixIo, RoundTrip) {
  std::mt19937_64 rng(8);
  auto m = random_invertible(12, rng);
  std::stringstream ss;
  write_matrix(ss, m);
  EXPECT_EQ(read_matrix(ss), m);
}

TEST(MatrixIo, TruncatedInputThrows) {
  std::stringstream ss("3\n100\n010\n");
  EXPECT_THROW(read_matrix(ss), ParseError);
}

TEST(RandomInvertible, DeterministicPerSeed) {
  std::mt19937_64 a(42), b(42);
  EXPECT_EQ(random_invertible(30, a), random_invertible(30, b));
}

}  // namespace
}  // namespace cnotsynth
