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

/// @file gf2.hpp
/// Bit-packed dense linear algebra over GF(2).
///
/// A GF2Matrix is square and row-major; each row is a run of 64-bit words.
/// Row operations are word-wise XOR loops, so an elementary row addition
/// costs O(n/64). Indices are 0-based throughout.

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnotsynth/errors.hpp"

namespace cnotsynth {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

/// Fixed-length bit vector over GF(2).
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : size_(n), words_(words_for(n), 0) {}

  static BitVector basis(std::size_t n, std::size_t j) {
    BitVector v(n);
    v.set(j, true);
    return v;
  }

  static BitVector from_string(const std::string& bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        v.set(i, true);
      } else if (bits[i] != '0') {
        throw ParseError("bit string contains '" + std::string(1, bits[i]) + "'");
      }
    }
    return v;
  }

  std::size_t size() const { return size_; }

  bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i, bool b) {
    const Word mask = Word{1} << (i % kWordBits);
    if (b) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  BitVector& operator^=(const BitVector& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }

  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](Word w) { return w != 0; });
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  std::span<Word> words() { return words_; }
  std::span<const Word> words() const { return words_; }

  std::string to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<Word> words_;
};

/// Indices of rows of a GF2Matrix; kept sorted ascending.
using RowIndexSet = std::vector<std::size_t>;

/// Square n x n matrix over GF(2).
class GF2Matrix {
 public:
  GF2Matrix() = default;

  /// Zero matrix.
  explicit GF2Matrix(std::size_t n) : n_(n), stride_(words_for(n)), data_(n * stride_, 0) {
    if (n == 0) throw std::invalid_argument("GF2Matrix dimension must be at least 1");
  }

  static GF2Matrix identity(std::size_t n) {
    GF2Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  /// Builds a matrix from '0'/'1' row strings; all rows must have length rows.size().
  static GF2Matrix from_rows(const std::vector<std::string>& rows) {
    GF2Matrix m(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != rows.size()) {
        throw ParseError("row " + std::to_string(r) + " has length " +
                         std::to_string(rows[r].size()) + ", expected " +
                         std::to_string(rows.size()));
      }
      for (std::size_t c = 0; c < rows.size(); ++c) {
        const char ch = rows[r][c];
        if (ch != '0' && ch != '1') {
          throw ParseError("row " + std::to_string(r) + " contains '" + std::string(1, ch) + "'");
        }
        m.set(r, c, ch == '1');
      }
    }
    return m;
  }

  std::size_t size() const { return n_; }

  bool get(std::size_t r, std::size_t c) const {
    return (data_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool b) {
    Word& w = data_[r * stride_ + c / kWordBits];
    const Word mask = Word{1} << (c % kWordBits);
    w = b ? (w | mask) : (w & ~mask);
  }

  std::span<const Word> row_words(std::size_t r) const {
    return {data_.data() + r * stride_, stride_};
  }

  BitVector row(std::size_t r) const {
    BitVector v(n_);
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(r * stride_), stride_,
                v.words().begin());
    return v;
  }
  BitVector column(std::size_t c) const {
    BitVector v(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      if (get(r, c)) v.set(r, true);
    }
    return v;
  }

  /// row dst ^= row src. Unchecked; the hot path of every synthesizer.
  void add_row(std::size_t src, std::size_t dst) {
    const Word* s = data_.data() + src * stride_;
    Word* d = data_.data() + dst * stride_;
    for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(data_.begin() + static_cast<std::ptrdiff_t>(a * stride_),
                     data_.begin() + static_cast<std::ptrdiff_t>((a + 1) * stride_),
                     data_.begin() + static_cast<std::ptrdiff_t>(b * stride_));
  }

  bool is_identity() const { return *this == identity(n_); }

  GF2Matrix transpose() const {
    GF2Matrix t(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t c = 0; c < n_; ++c) {
        if (get(r, c)) t.set(c, r, true);
      }
    }
    return t;
  }

  /// Matrix product over GF(2): row r of the result is the XOR of rows c of rhs with this(r,c)=1.
  GF2Matrix operator*(const GF2Matrix& rhs) const {
    if (rhs.n_ != n_) throw std::invalid_argument("dimension mismatch in GF2Matrix product");
    GF2Matrix out(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      Word* o = out.data_.data() + r * stride_;
      for (std::size_t c = 0; c < n_; ++c) {
        if (!get(r, c)) continue;
        const Word* s = rhs.data_.data() + c * stride_;
        for (std::size_t w = 0; w < stride_; ++w) o[w] ^= s[w];
      }
    }
    return out;
  }

  /// Matrix-vector product y = M x.
  BitVector operator*(const BitVector& x) const {
    if (x.size() != n_) throw std::invalid_argument("dimension mismatch in GF2Matrix * vector");
    BitVector y(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      Word acc = 0;
      const auto rw = row_words(r);
      const auto xw = x.words();
      for (std::size_t w = 0; w < stride_; ++w) acc ^= rw[w] & xw[w];
      y.set(r, (std::popcount(acc) & 1) != 0);
    }
    return y;
  }

  std::string to_string() const {
    std::string s;
    s.reserve(n_ * (n_ + 1));
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t c = 0; c < n_; ++c) s.push_back(get(r, c) ? '1' : '0');
      s.push_back('\n');
    }
    return s;
  }

  friend bool operator==(const GF2Matrix&, const GF2Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> data_;
};

/// Returns a copy of m with row j replaced by row j XOR row i.
inline GF2Matrix row_add(const GF2Matrix& m, std::size_t i, std::size_t j) {
  if (i >= m.size() || j >= m.size()) throw std::out_of_range("row_add: index out of range");
  if (i == j) throw std::invalid_argument("row_add: source and destination rows coincide");
  GF2Matrix out = m;
  out.add_row(i, j);
  return out;
}

/// Rank over GF(2) by forward elimination on a scratch copy.
inline std::size_t rank(GF2Matrix m) {
  const std::size_t n = m.size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < n; ++c) {
    std::size_t p = r;
    while (p < n && !m.get(p, c)) ++p;
    if (p == n) continue;
    m.swap_rows(p, r);
    for (std::size_t q = r + 1; q < n; ++q) {
      if (m.get(q, c)) m.add_row(r, q);
    }
    ++r;
  }
  return r;
}

inline bool is_invertible(const GF2Matrix& m) { return rank(m) == m.size(); }

/// Gauss-Jordan on [M | I]. The pivot for column c is the lowest-index
/// remaining row with a 1 there.
inline GF2Matrix inverse(const GF2Matrix& m) {
  const std::size_t n = m.size();
  GF2Matrix a = m;
  GF2Matrix inv = GF2Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && !a.get(p, c)) ++p;
    if (p == n) throw SingularMatrixError("no pivot in column " + std::to_string(c));
    a.swap_rows(p, c);
    inv.swap_rows(p, c);
    for (std::size_t r = 0; r < n; ++r) {
      if (r != c && a.get(r, c)) {
        a.add_row(c, r);
        inv.add_row(c, r);
      }
    }
  }
  return inv;
}

/// Rejection sampler: fill every entry with a fair bit, retry until invertible.
/// About 29% of large random matrices are invertible, so a few draws suffice.
template <typename Rng>
GF2Matrix random_invertible(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("random_invertible: n must be at least 1");
  std::uniform_int_distribution<int> bit(0, 1);
  for (;;) {
    GF2Matrix m(n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) m.set(r, c, bit(rng) != 0);
    }
    if (is_invertible(m)) return m;
  }
}

/// Finds S' (excluding i) with XOR of rows S' equal to row i XOR e_i.
///
/// The coefficient vector is e_i + (row i of M^-1). Requires (M^-1)(i,i) = 1,
/// which holds whenever column i of M is e_i; otherwise row i itself would be
/// needed in the combination and std::domain_error is thrown.
inline RowIndexSet solve_row_combination_from_inverse_row(const BitVector& inverse_row,
                                                          std::size_t i) {
  if (!inverse_row.get(i)) {
    throw std::domain_error("solve_row_combination: solution would include row " +
                            std::to_string(i));
  }
  RowIndexSet out;
  for (std::size_t j = 0; j < inverse_row.size(); ++j) {
    if (j != i && inverse_row.get(j)) out.push_back(j);
  }
  return out;
}

inline RowIndexSet solve_row_combination(const GF2Matrix& m, std::size_t i) {
  if (i >= m.size()) throw std::out_of_range("solve_row_combination: row out of range");
  return solve_row_combination_from_inverse_row(inverse(m).row(i), i);
}

/// Matrix text format: a line "n", then n lines of n '0'/'1' characters.
inline GF2Matrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream head(line);
    if (!(head >> n) || n == 0) throw ParseError("matrix header must be a positive integer");
    break;
  }
  if (n == 0) throw ParseError("empty matrix input");
  std::vector<std::string> rows;
  while (rows.size() < n && std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    rows.push_back(line);
  }
  if (rows.size() != n) {
    throw ParseError("expected " + std::to_string(n) + " matrix rows, got " +
                     std::to_string(rows.size()));
  }
  return GF2Matrix::from_rows(rows);
}

inline void write_matrix(std::ostream& out, const GF2Matrix& m) {
  out << m.size() << '\n' << m.to_string();
}

}  // namespace cnotsynth
