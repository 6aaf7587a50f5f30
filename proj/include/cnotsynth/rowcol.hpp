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

/// @file rowcol.hpp
/// Vertex-peeling synthesis for any connected graph, at most 2n^2 gates.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnotsynth/circuit.hpp"
#include "cnotsynth/gf2.hpp"
#include "cnotsynth/steiner_ops.hpp"
#include "cnotsynth/topology.hpp"

namespace cnotsynth {

enum class PeelStrategy {
  kMinDegree,  // non-cut vertex of least remaining degree, lowest index on ties
  kBfsLeaf,    // lowest-index leaf of a BFS spanning tree from the lowest active vertex
};

inline PeelStrategy parse_peel_strategy(const std::string& s) {
  if (s == "mindeg") return PeelStrategy::kMinDegree;
  if (s == "bfsleaf") return PeelStrategy::kBfsLeaf;
  throw std::invalid_argument("unknown strategy '" + s + "' (expected mindeg or bfsleaf)");
}

struct RowcolOptions {
  PeelStrategy strategy = PeelStrategy::kMinDegree;
  // Assert the column/row post-conditions and connectivity after every peel.
  bool verify_steps = false;
};

inline std::size_t choose_peel_vertex(const TopologyGraph& g, PeelStrategy strategy) {
  const std::size_t n = g.num_vertices();
  if (strategy == PeelStrategy::kMinDegree) {
    const auto cut = cut_vertices(g);
    std::size_t best = kNone;
    std::size_t best_deg = kNone;
    for (std::size_t v = 0; v < n; ++v) {
      if (!g.is_active(v) || cut[v]) continue;
      const std::size_t d = g.degree(v);
      if (d < best_deg) {
        best = v;
        best_deg = d;
      }
    }
    if (best == kNone) throw std::logic_error("no non-cut vertex found");
    return best;
  }
  std::size_t root = 0;
  while (root < n && !g.is_active(root)) ++root;
  std::vector<std::size_t> dist;
  std::vector<std::size_t> parent;
  g.bfs(root, dist, parent);
  std::vector<char> has_child(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (dist[v] != kNone && parent[v] != kNone) has_child[parent[v]] = 1;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (dist[v] != kNone && !has_child[v]) return v;
  }
  return root;
}

namespace detail {

inline void require_identity_line(const GF2Matrix& m, std::size_t i, bool check_row) {
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (m.get(j, i) != (j == i)) {
      throw std::logic_error("column " + std::to_string(i) + " is not e_i after elimination");
    }
    if (check_row && m.get(i, j) != (j == i)) {
      throw std::logic_error("row " + std::to_string(i) + " is not e_i after elimination");
    }
  }
}

}  // namespace detail

/// Returns a circuit valid on g whose matrix is m.
inline CnotCircuit synthesize_rowcol(const GF2Matrix& m, TopologyGraph g,
                                     const RowcolOptions& opts = {}) {
  const std::size_t n = m.size();
  if (g.num_vertices() != n) {
    throw std::invalid_argument("matrix is " + std::to_string(n) + "x" + std::to_string(n) +
                                " but graph has " + std::to_string(g.num_vertices()) + " vertices");
  }
  g.reset_active();
  if (!g.is_connected()) throw DisconnectedError("graph is not connected");

  GF2Matrix work = m;
  // w = (M^-1)^T, kept in step with work: row op (c -> t) on M is w[c] ^= w[t].
  GF2Matrix w = inverse(m).transpose();
  std::vector<CnotGate> ops;
  ops.reserve(2 * n * n);
  auto sink = [&](const CnotGate& gate) {
    w.add_row(gate.target, gate.control);
    ops.push_back(gate);
  };

  while (g.num_active() > 1) {
    const std::size_t i = choose_peel_vertex(g, opts.strategy);
    eliminate_column(work, g, i, sink);
    if (opts.verify_steps) detail::require_identity_line(work, i, false);
    const RowIndexSet combo = solve_row_combination_from_inverse_row(w.column(i), i);
    eliminate_row_with(work, g, i, combo, sink);
    if (opts.verify_steps) detail::require_identity_line(work, i, true);
    g.deactivate(i);
    if (opts.verify_steps && !g.is_connected()) {
      throw std::logic_error("peeling vertex " + std::to_string(i) + " disconnected the graph");
    }
  }
  if (!work.is_identity()) throw std::logic_error("elimination did not reach the identity");

  CnotCircuit out(n);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) out.add(*it);
  return out;
}

}  // namespace cnotsynth
