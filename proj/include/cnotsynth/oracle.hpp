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

/// @file oracle.hpp
/// Exact minimum constrained CNOT counts for n <= 4, by breadth-first search
/// over GL(n,2) from the identity.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cnotsynth/circuit.hpp"
#include "cnotsynth/gf2.hpp"
#include "cnotsynth/topology.hpp"

namespace cnotsynth {

inline constexpr std::size_t kOracleMaxQubits = 4;

/// Bit (i * n + j) holds M[i][j].
inline std::uint32_t encode_matrix(const GF2Matrix& m) {
  const std::size_t n = m.size();
  if (n > kOracleMaxQubits) throw std::invalid_argument("encode_matrix: n must be at most 4");
  std::uint32_t key = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m.get(i, j)) key |= std::uint32_t{1} << (i * n + j);
    }
  }
  return key;
}

inline GF2Matrix decode_matrix(std::uint32_t key, std::size_t n) {
  GF2Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, (key >> (i * n + j)) & 1U);
  }
  return m;
}

/// |GL(n,2)| = prod_{i<n} (2^n - 2^i).
inline std::uint64_t gl2_order(std::size_t n) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < n; ++i) out *= (std::uint64_t{1} << n) - (std::uint64_t{1} << i);
  return out;
}

class OptimalSizeTable {
 public:
  OptimalSizeTable(std::size_t n, std::unordered_map<std::uint32_t, std::size_t> dist)
      : n_(n), dist_(std::move(dist)) {}

  std::size_t num_qubits() const { return n_; }
  std::size_t size() const { return dist_.size(); }

  /// Minimum gate count; throws if m is not in the table.
  std::size_t distance(const GF2Matrix& m) const {
    if (m.size() != n_) throw std::invalid_argument("matrix dimension does not match the table");
    const auto it = dist_.find(encode_matrix(m));
    if (it == dist_.end()) throw std::out_of_range("matrix not reachable");
    return it->second;
  }

  std::size_t max_distance() const {
    std::size_t best = 0;
    for (const auto& [key, d] : dist_) best = std::max(best, d);
    return best;
  }

  /// (key, distance) pairs ordered by key.
  std::vector<std::pair<std::uint32_t, std::size_t>> entries() const {
    std::vector<std::pair<std::uint32_t, std::size_t>> out(dist_.begin(), dist_.end());
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::size_t n_;
  std::unordered_map<std::uint32_t, std::size_t> dist_;
};

inline OptimalSizeTable optimal_size_table(const TopologyGraph& g) {
  const std::size_t n = g.num_vertices();
  if (n > kOracleMaxQubits) {
    throw std::invalid_argument("oracle supports at most 4 qubits, got " + std::to_string(n));
  }
  std::vector<std::pair<std::size_t, std::size_t>> moves;
  for (auto [u, v] : g.edges()) {
    moves.emplace_back(u, v);
    moves.emplace_back(v, u);
  }
  std::unordered_map<std::uint32_t, std::size_t> dist;
  const std::uint32_t start = encode_matrix(GF2Matrix::identity(n));
  dist.emplace(start, 0);
  std::vector<std::uint32_t> frontier{start};
  const std::uint32_t row_mask = (std::uint32_t{1} << n) - 1;
  for (std::size_t level = 1; !frontier.empty(); ++level) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t key : frontier) {
      for (auto [c, t] : moves) {
        const std::uint32_t src = (key >> (c * n)) & row_mask;
        const std::uint32_t moved = key ^ (src << (t * n));
        if (dist.emplace(moved, level).second) next.push_back(moved);
      }
    }
    frontier = std::move(next);
  }
  return OptimalSizeTable(n, std::move(dist));
}

using SynthesisFn = std::function<CnotCircuit(const GF2Matrix&, const TopologyGraph&)>;

struct GapStats {
  std::size_t samples = 0;
  double mean = 0.0;
  std::size_t max = 0;
  std::map<std::size_t, std::size_t> histogram;  // gap -> count
};

namespace detail {

inline std::size_t checked_gap(const OptimalSizeTable& table, const TopologyGraph& g,
                               const SynthesisFn& synth, const GF2Matrix& m) {
  const CnotCircuit c = synth(m, g);
  if (!check_equivalent(m, c) || !validate_circuit(g, c)) {
    throw std::logic_error("synthesizer returned a wrong or invalid circuit");
  }
  const std::size_t best = table.distance(m);
  if (c.size() < best) throw std::logic_error("synthesizer beat the exhaustive optimum");
  return c.size() - best;
}

inline void add_gap(GapStats& st, std::size_t gap) {
  st.mean += static_cast<double>(gap);
  st.max = std::max(st.max, gap);
  ++st.histogram[gap];
  ++st.samples;
}

}  // namespace detail

/// Gap over every matrix in the table.
inline GapStats optimality_gap_exhaustive(const OptimalSizeTable& table, const TopologyGraph& g,
                                          const SynthesisFn& synth) {
  GapStats st;
  for (const auto& [key, d] : table.entries()) {
    detail::add_gap(st, detail::checked_gap(table, g, synth, decode_matrix(key, table.num_qubits())));
  }
  if (st.samples) st.mean /= static_cast<double>(st.samples);
  return st;
}

/// Gap over uniformly sampled invertible matrices.
template <typename Rng>
GapStats optimality_gap(const OptimalSizeTable& table, const TopologyGraph& g, const SynthesisFn& synth,
                        std::size_t samples, Rng& rng) {
  GapStats st;
  for (std::size_t k = 0; k < samples; ++k) {
    detail::add_gap(st, detail::checked_gap(table, g, synth, random_invertible(table.num_qubits(), rng)));
  }
  if (st.samples) st.mean /= static_cast<double>(st.samples);
  return st;
}

}  // namespace cnotsynth
