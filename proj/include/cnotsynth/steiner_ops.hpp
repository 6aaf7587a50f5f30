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

/// @file steiner_ops.hpp
/// Tree-guided row operations. Every primitive applies row additions to a
/// caller-owned matrix and reports each one, as a CnotGate, to a sink.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cnotsynth/circuit.hpp"
#include "cnotsynth/gf2.hpp"
#include "cnotsynth/topology.hpp"

namespace cnotsynth {

/// Any callable accepting a CnotGate.
template <typename S>
concept GateSink = requires(S s, CnotGate g) { s(g); };

namespace detail {

template <GateSink Sink>
void apply_row_add(GF2Matrix& m, std::size_t control, std::size_t target, Sink& sink) {
  m.add_row(control, target);
  sink(CnotGate{control, target});
}

}  // namespace detail

/// Clears column i on every active row except i, leaving M[i][i] = 1.
template <GateSink Sink>
void eliminate_column(GF2Matrix& m, const TopologyGraph& g, std::size_t i, Sink&& sink) {
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (g.is_active(j) && j != i && m.get(j, i)) support.push_back(j);
  }
  if (support.empty()) {
    if (!m.get(i, i)) throw SingularMatrixError("column " + std::to_string(i) + " is zero on active rows");
    return;
  }
  const SteinerTree t = steiner_tree_2approx(g, support, i);
  const auto post = t.postorder();
  for (std::size_t j : post) {
    if (j == i) continue;
    const std::size_t k = t.parent[j];
    if (m.get(j, i) && !m.get(k, i)) detail::apply_row_add(m, j, k, sink);
  }
  for (std::size_t j : post) {
    for (std::size_t c : t.children[j]) detail::apply_row_add(m, j, c, sink);
  }
}

/// Adds the rows in `combo` into row i through their Steiner tree. Rows of
/// non-terminal tree nodes are left modified; only row i's final value matters.
template <GateSink Sink>
void eliminate_row_with(GF2Matrix& m, const TopologyGraph& g, std::size_t i,
                        const RowIndexSet& combo, Sink&& sink) {
  if (combo.empty()) return;
  const SteinerTree t = steiner_tree_2approx(g, combo, i);
  for (std::size_t j : t.preorder()) {
    if (j != i && !t.is_terminal(j)) detail::apply_row_add(m, j, t.parent[j], sink);
  }
  for (std::size_t j : t.postorder()) {
    if (j != i) detail::apply_row_add(m, j, t.parent[j], sink);
  }
}

/// Turns row i into e_i. Requires column i to be e_i already.
template <GateSink Sink>
void eliminate_row(GF2Matrix& m, const TopologyGraph& g, std::size_t i, Sink&& sink) {
  eliminate_row_with(m, g, i, solve_row_combination(m, i), sink);
}

/// Gates that XOR every terminal wire into `root` and restore every other wire.
/// The root is never a control, so replaying the non-root gates backwards
/// undoes all side effects. At most 4(|tree| - 1) gates.
inline std::vector<CnotGate> parity_accumulate_gates(const TopologyGraph& g, std::size_t root,
                                                     const std::vector<std::size_t>& terminals) {
  for (std::size_t t : terminals) {
    if (t == root) throw std::invalid_argument("parity target set contains the source");
  }
  std::vector<CnotGate> out;
  if (terminals.empty()) return out;
  const SteinerTree t = steiner_tree_2approx(g, terminals, root);
  for (std::size_t j : t.preorder()) {
    if (j != root && !t.is_terminal(j)) out.push_back({j, t.parent[j]});
  }
  for (std::size_t j : t.postorder()) {
    if (j != root) out.push_back({j, t.parent[j]});
  }
  const std::size_t forward = out.size();
  for (std::size_t k = forward; k-- > 0;) {
    if (out[k].target != root) out.push_back(out[k]);
  }
  return out;
}

/// Gates that XOR `source` into every target wire and restore every other wire.
/// This is the transpose of parity accumulation: reversed order, roles swapped.
inline std::vector<CnotGate> parity_fanout_gates(const TopologyGraph& g, std::size_t source,
                                                 const std::vector<std::size_t>& targets) {
  auto acc = parity_accumulate_gates(g, source, targets);
  std::vector<CnotGate> out;
  out.reserve(acc.size());
  for (auto it = acc.rbegin(); it != acc.rend(); ++it) out.push_back({it->target, it->control});
  return out;
}

/// Row form of the fanout: row t ^= row source for each target, nothing else changes.
template <GateSink Sink>
void parity_fanout(GF2Matrix& m, const TopologyGraph& g, std::size_t source,
                   const std::vector<std::size_t>& targets, Sink&& sink) {
  for (const auto& gate : parity_fanout_gates(g, source, targets)) {
    detail::apply_row_add(m, gate.control, gate.target, sink);
  }
}

/// State form of the fanout, for wire-level use.
inline void parity_fanout(CnotCircuit& c, const TopologyGraph& g, std::size_t source,
                          const std::vector<std::size_t>& targets) {
  for (const auto& gate : parity_fanout_gates(g, source, targets)) c.add(gate);
}

}  // namespace cnotsynth
