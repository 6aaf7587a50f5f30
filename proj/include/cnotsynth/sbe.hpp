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

/// @file sbe.hpp
/// Block elimination with Gray-code pattern sharing, for well-connected graphs.
///
/// Columns are processed s at a time. Every non-pivot row whose s-bit block
/// pattern equals some value g is cleared by one fanout from a helper row l
/// that has been stepped to pattern g, so each pattern costs one row addition
/// into l plus fanouts, instead of s additions per row.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnotsynth/circuit.hpp"
#include "cnotsynth/gf2.hpp"
#include "cnotsynth/rowcol.hpp"
#include "cnotsynth/steiner_ops.hpp"
#include "cnotsynth/topology.hpp"

namespace cnotsynth {

struct SbeParams {
  std::size_t k = 1;
  std::size_t s = 1;
  // Set when log2(n/k)/2 < 1: the block method offers nothing and
  // synthesize_sbe hands the matrix to ROWCOL.
  bool sparse = false;
};

/// s = max(1, floor(log2(n/k) / 2)); flags the sparse case.
inline SbeParams params_for_k(std::size_t n, std::size_t k) {
  if (n == 0) throw std::invalid_argument("params_for_k: n must be positive");
  SbeParams p;
  p.k = std::clamp<std::size_t>(k, 1, n);
  // floor(log2(n/k)) for real n/k equals the largest e with k * 2^e <= n.
  std::size_t e = 0;
  while (p.k << (e + 1) <= n) ++e;
  const std::size_t raw = e / 2;
  p.sparse = raw < 1;
  p.s = std::max<std::size_t>(1, raw);
  return p;
}

/// k = ceil(n / min-degree).
inline SbeParams choose_params(const TopologyGraph& g) {
  const std::size_t n = g.num_vertices();
  const std::size_t delta = g.min_degree();
  const std::size_t k = delta == 0 ? n : (n + delta - 1) / delta;
  return params_for_k(n, k);
}

/// Gray(i) = i xor floor(i/2).
constexpr std::size_t gray_code(std::size_t i) { return i ^ (i >> 1); }

namespace detail {

/// Row t ^= row source for all targets, restoring everything else.
template <GateSink Sink>
void add_rows(GF2Matrix& m, const TopologyGraph& g, std::size_t source,
              const std::vector<std::size_t>& targets, Sink& sink) {
  parity_fanout(m, g, source, targets, sink);
}

}  // namespace detail

/// Reduces columns [c0, c0 + width) to identity columns. Columns before c0
/// must already be identity columns; they stay that way. The pivot rows are
/// rows c0..c0+width-1.
template <GateSink Sink>
void eliminate_block(GF2Matrix& m, const TopologyGraph& g, std::size_t c0, std::size_t width,
                     const SbeParams& params, Sink&& sink) {
  const std::size_t n = m.size();
  if (c0 + width > n || width == 0) throw std::out_of_range("eliminate_block: bad column range");
  if (width >= 8 * sizeof(std::size_t)) throw std::invalid_argument("eliminate_block: block too wide");
  const std::size_t end = c0 + width;

  // (a) Pivot sub-block to identity, one column at a time.
  for (std::size_t c = c0; c < end; ++c) {
    if (!m.get(c, c)) {
      // Borrow the first later row whose bit in column c is 1 once its
      // entries on the already-reduced block columns are cancelled.
      std::size_t r = kNone;
      for (std::size_t j = c + 1; j < n && r == kNone; ++j) {
        bool bit = m.get(j, c);
        for (std::size_t q = c0; q < c; ++q) {
          if (m.get(j, q) && m.get(q, c)) bit = !bit;
        }
        if (bit) r = j;
      }
      if (r == kNone) throw SingularMatrixError("no pivot for column " + std::to_string(c));
      if (r >= end) {
        for (std::size_t q = c0; q < c; ++q) {
          if (m.get(r, q)) detail::add_rows(m, g, q, {r}, sink);
        }
      }
      detail::add_rows(m, g, r, {c}, sink);
    }
    std::vector<std::size_t> others;
    for (std::size_t p = c0; p < end; ++p) {
      if (p != c && m.get(p, c)) others.push_back(p);
    }
    if (!others.empty()) detail::add_rows(m, g, c, others, sink);
  }
  if (end == n) {
    // No helper row is available past the block: clear the rows above it
    // column by column from the pivots, which are zero outside the block.
    for (std::size_t c = c0; c < end; ++c) {
      std::vector<std::size_t> rows;
      for (std::size_t r = 0; r < c0; ++r) {
        if (m.get(r, c)) rows.push_back(r);
      }
      if (!rows.empty()) detail::add_rows(m, g, c, rows, sink);
    }
    return;
  }

  // (b) Helper row: highest degree among the remaining rows, cleared on the block.
  std::size_t l = end;
  for (std::size_t v = end; v < n; ++v) {
    if (g.degree(v) > g.degree(l)) l = v;
  }
  for (std::size_t c = c0; c < end; ++c) {
    if (m.get(l, c)) detail::add_rows(m, g, c, {l}, sink);
  }

  // (c) Bucket every other row by block pattern, then walk the patterns in
  // Gray order. The helper is zero on all earlier identity columns, so adding
  // it never disturbs them.
  const std::size_t patterns = std::size_t{1} << width;
  std::vector<std::vector<std::size_t>> bucket(patterns);
  for (std::size_t r = 0; r < n; ++r) {
    if (r == l || (r >= c0 && r < end)) continue;
    std::size_t pat = 0;
    for (std::size_t b = 0; b < width; ++b) {
      if (m.get(r, c0 + b)) pat |= std::size_t{1} << b;
    }
    if (pat != 0) bucket[pat].push_back(r);
  }
  // The walk stops at the last pattern, in Gray order, that some row carries.
  std::size_t last = 0;
  for (std::size_t i = 1; i < patterns; ++i) {
    if (!bucket[gray_code(i)].empty()) last = i;
  }
  const std::size_t batch = std::max<std::size_t>(1, params.k);
  std::size_t current = 0;
  for (std::size_t i = 1; i <= last; ++i) {
    const std::size_t code = gray_code(i);
    const std::size_t bit = static_cast<std::size_t>(std::countr_zero(code ^ current));
    detail::add_rows(m, g, c0 + bit, {l}, sink);
    current = code;
    const auto& rows = bucket[code];
    for (std::size_t at = 0; at < rows.size(); at += batch) {
      const std::vector<std::size_t> part(rows.begin() + static_cast<std::ptrdiff_t>(at),
                                          rows.begin() + static_cast<std::ptrdiff_t>(
                                                             std::min(rows.size(), at + batch)));
      detail::add_rows(m, g, l, part, sink);
    }
  }
  for (std::size_t b = 0; b < width; ++b) {
    if ((current >> b) & 1U) detail::add_rows(m, g, c0 + b, {l}, sink);
  }
}

struct SbeResult {
  CnotCircuit circuit;
  std::string label;                    // "sbe", or "sbe->rowcol" on the sparse fallback
  std::vector<std::size_t> block_gates;  // gates emitted per block
};

inline SbeResult synthesize_sbe_labeled(const GF2Matrix& m, const TopologyGraph& graph,
                                        const SbeParams& params) {
  const std::size_t n = m.size();
  if (graph.num_vertices() != n) {
    throw std::invalid_argument("matrix is " + std::to_string(n) + "x" + std::to_string(n) +
                                " but graph has " + std::to_string(graph.num_vertices()) +
                                " vertices");
  }
  TopologyGraph g = graph;
  g.reset_active();
  if (!g.is_connected()) throw DisconnectedError("graph is not connected");
  if (params.sparse) return {synthesize_rowcol(m, g), "sbe->rowcol", {}};
  if (!is_invertible(m)) throw SingularMatrixError("input matrix is singular");

  GF2Matrix work = m;
  std::vector<CnotGate> ops;
  SbeResult result;
  auto sink = [&](const CnotGate& gate) { ops.push_back(gate); };
  const std::size_t s = std::max<std::size_t>(1, params.s);
  for (std::size_t c0 = 0; c0 < n; c0 += s) {
    const std::size_t before = ops.size();
    eliminate_block(work, g, c0, std::min(s, n - c0), params, sink);
    result.block_gates.push_back(ops.size() - before);
  }
  if (!work.is_identity()) throw std::logic_error("block elimination did not reach the identity");
  result.circuit = CnotCircuit(n);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) result.circuit.add(*it);
  result.label = "sbe";
  return result;
}

inline CnotCircuit synthesize_sbe(const GF2Matrix& m, const TopologyGraph& g, const SbeParams& params) {
  return synthesize_sbe_labeled(m, g, params).circuit;
}

inline CnotCircuit synthesize_sbe(const GF2Matrix& m, const TopologyGraph& g) {
  return synthesize_sbe(m, g, choose_params(g));
}

}  // namespace cnotsynth
