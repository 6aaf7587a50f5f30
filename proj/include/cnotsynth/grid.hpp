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

/// @file grid.hpp
/// Depth-oriented synthesis on grids with ancillas.
///
/// The logical layout is an m1 x m2 array. Inputs fill the first w = ceil(n/m1)
/// columns column by column, outputs the last w columns, and the s = m2 - 2w
/// columns between them are work space. Grids with more than two dimensions
/// are folded: the trailing dimensions are walked in snake order and treated
/// as one axis, which keeps logical neighbours physically adjacent.

#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnotsynth/circuit.hpp"
#include "cnotsynth/gf2.hpp"
#include "cnotsynth/steiner_ops.hpp"
#include "cnotsynth/topology.hpp"

namespace cnotsynth {

using GridCoord = std::vector<std::size_t>;

/// Row-major index of a coordinate, last dimension fastest (as grid_graph).
inline std::size_t grid_index(const std::vector<std::size_t>& dims, const GridCoord& c) {
  if (c.size() != dims.size()) throw std::invalid_argument("coordinate has wrong dimension");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (c[i] >= dims[i]) throw std::out_of_range("coordinate outside the grid");
    idx = idx * dims[i] + c[i];
  }
  return idx;
}

inline GridCoord grid_coord(const std::vector<std::size_t>& dims, std::size_t idx) {
  GridCoord c(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    c[i] = idx % dims[i];
    idx /= dims[i];
  }
  return c;
}

enum class CellRole { kInput, kWork, kOutput, kIdle };

struct GridLayout {
  std::vector<std::size_t> dims;  // physical grid
  std::size_t n = 0;              // data qubits
  std::size_t m1 = 0;             // logical rows
  std::size_t m2 = 0;             // logical columns
  std::size_t w = 0;              // input (and output) columns
  std::size_t s = 0;              // work columns

  std::size_t num_wires() const { return m1 * m2; }

  /// Physical wire of logical cell (r, c).
  std::size_t wire(std::size_t r, std::size_t c) const {
    if (r >= m1 || c >= m2) throw std::out_of_range("logical cell outside the layout");
    GridCoord p(dims.size());
    p[0] = r;
    // Snake walk over the trailing dimensions: digit i is reflected when the
    // physical coordinates before it sum to an odd number.
    std::vector<std::size_t> digit(dims.size(), 0);
    std::size_t rest = c;
    for (std::size_t i = dims.size(); i-- > 1;) {
      digit[i] = rest % dims[i];
      rest /= dims[i];
    }
    std::size_t prefix = 0;
    for (std::size_t i = 1; i < dims.size(); ++i) {
      p[i] = prefix % 2 ? dims[i] - 1 - digit[i] : digit[i];
      prefix += p[i];
    }
    return grid_index(dims, p);
  }

  CellRole role(std::size_t r, std::size_t c) const {
    if (c < w) return c * m1 + r < n ? CellRole::kInput : CellRole::kIdle;
    if (c < w + s) return CellRole::kWork;
    return (c - w - s) * m1 + r < n ? CellRole::kOutput : CellRole::kIdle;
  }

  /// Wire of data qubit i, which is where both x_i starts and y_i ends.
  std::size_t data_wire(std::size_t i) const { return wire(i % m1, i / m1); }

  std::vector<std::size_t> data_wires() const {
    std::vector<std::size_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = data_wire(i);
    return out;
  }

  TopologyGraph graph() const { return grid_graph(dims); }
};

/// Checks 3n <= m1*m2 <= n^2 and s >= 1. dims[0] is m1; the remaining
/// dimensions fold into m2.
inline GridLayout make_grid_layout(std::size_t n, const std::vector<std::size_t>& dims) {
  if (n == 0) throw std::invalid_argument("layout needs at least one data qubit");
  if (dims.size() < 2) throw std::invalid_argument("layout needs at least two dimensions");
  GridLayout l;
  l.dims = dims;
  l.n = n;
  l.m1 = dims[0];
  l.m2 = 1;
  for (std::size_t i = 1; i < dims.size(); ++i) l.m2 *= dims[i];
  if (l.m1 == 0 || l.m2 == 0) throw std::invalid_argument("grid dimension must be positive");
  const std::size_t total = l.m1 * l.m2;
  if (total < 3 * n || total > n * n) {
    throw std::invalid_argument("layout has " + std::to_string(total) + " cells; need between " +
                                std::to_string(3 * n) + " and " + std::to_string(n * n));
  }
  l.w = (n + l.m1 - 1) / l.m1;
  if (l.m2 < 2 * l.w + 1) {
    throw std::invalid_argument("layout leaves no work column (m2 = " + std::to_string(l.m2) +
                                ", input width " + std::to_string(l.w) + ")");
  }
  l.s = l.m2 - 2 * l.w;
  return l;
}

inline GridLayout make_grid_layout(std::size_t n, std::size_t m1, std::size_t m2) {
  return make_grid_layout(n, std::vector<std::size_t>{m1, m2});
}

/// Copies the value at `source` into every other cell of the box [lo, hi],
/// which must contain the source and otherwise hold 0. Dimension k is filled
/// by chains running out from the source coordinate, so the depth is at most
/// the sum of the box side lengths minus d.
template <GateSink Sink>
void copy_fanout(const std::vector<std::size_t>& dims, const GridCoord& source, const GridCoord& lo,
                 const GridCoord& hi, Sink&& sink) {
  const std::size_t d = dims.size();
  if (source.size() != d || lo.size() != d || hi.size() != d) {
    throw std::invalid_argument("copy_fanout: coordinate has wrong dimension");
  }
  for (std::size_t k = 0; k < d; ++k) {
    if (lo[k] > hi[k] || hi[k] >= dims[k]) throw std::invalid_argument("copy_fanout: region is not a sub-box");
    if (source[k] < lo[k] || source[k] > hi[k]) {
      throw std::invalid_argument("copy_fanout: source lies outside the region box");
    }
  }
  // Cells already holding the value: the box spanned by dimensions < k, with
  // the source coordinate elsewhere.
  std::vector<GridCoord> filled{source};
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<GridCoord> next;
    for (const auto& base : filled) {
      next.push_back(base);
      GridCoord c = base;
      for (std::size_t x = source[k]; x < hi[k]; ++x) {
        GridCoord to = c;
        to[k] = x + 1;
        sink(CnotGate{grid_index(dims, c), grid_index(dims, to)});
        next.push_back(to);
        c = to;
      }
      c = base;
      for (std::size_t x = source[k]; x > lo[k]; --x) {
        GridCoord to = c;
        to[k] = x - 1;
        sink(CnotGate{grid_index(dims, c), grid_index(dims, to)});
        next.push_back(to);
        c = to;
      }
    }
    filled = std::move(next);
  }
}

/// y ^= XOR of the cells in s_set; every other cell ends unchanged.
///
/// Uses the tree that copy_fanout from y would walk over the bounding box of
/// s_set and y. A conditional pass folds each non-member into its parent, an
/// unconditional pass sums every subtree toward y, and the gates not aimed at
/// y are replayed backwards to restore the other cells.
template <GateSink Sink>
void parity_add_grid(const std::vector<std::size_t>& dims, const std::vector<GridCoord>& s_set,
                     const GridCoord& y, Sink&& sink) {
  const std::size_t d = dims.size();
  const std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                                            [](std::size_t a, std::size_t b) { return a * b; });
  const std::size_t root = grid_index(dims, y);
  std::vector<char> member(total, 0);
  for (const auto& c : s_set) {
    const std::size_t v = grid_index(dims, c);
    if (v == root) throw std::invalid_argument("parity_add_grid: accumulator is also in the set");
    member[v] = 1;
  }
  if (s_set.empty()) return;
  GridCoord lo = y;
  GridCoord hi = y;
  for (const auto& c : s_set) {
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], c[k]);
      hi[k] = std::max(hi[k], c[k]);
    }
  }
  // The copy tree: a cell's parent is one step toward y along the last
  // dimension in which it differs from y. Collect it in copy (BFS) order.
  std::vector<CnotGate> copy_edges;
  copy_fanout(dims, y, lo, hi, [&](const CnotGate& g) { copy_edges.push_back(g); });
  std::vector<std::size_t> parent(total, kNone);
  std::vector<std::size_t> order{root};
  for (const auto& e : copy_edges) {
    parent[e.target] = e.control;
    order.push_back(e.target);
  }
  // Sort by distance from y so that parents precede children.
  std::vector<std::size_t> dist(total, 0);
  for (std::size_t v : order) {
    if (v != root) dist[v] = dist[parent[v]] + 1;
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
  // Drop subtrees without members.
  std::vector<char> keep(total, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t v = *it;
    if (member[v]) keep[v] = 1;
    if (keep[v] && v != root) keep[parent[v]] = 1;
  }
  std::vector<CnotGate> gates;
  for (std::size_t v : order) {
    if (v != root && keep[v] && !member[v]) gates.push_back({v, parent[v]});
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it != root && keep[*it]) gates.push_back({*it, parent[*it]});
  }
  const std::size_t forward = gates.size();
  for (std::size_t k = forward; k-- > 0;) {
    if (gates[k].target != root) gates.push_back(gates[k]);
  }
  for (const auto& g : gates) sink(g);
}

namespace detail {

/// Emits gates on logical cells, optionally with the column axis mirrored.
struct GridEmitter {
  const GridLayout& layout;
  bool mirror;
  std::vector<CnotGate>& out;

  std::size_t at(std::size_t r, std::size_t c) const {
    return layout.wire(r, mirror ? layout.m2 - 1 - c : c);
  }
  CnotGate gate(std::size_t r1, std::size_t c1, std::size_t r2, std::size_t c2) const {
    return {at(r1, c1), at(r2, c2)};
  }
  void cx(std::size_t r1, std::size_t c1, std::size_t r2, std::size_t c2) {
    out.push_back(gate(r1, c1, r2, c2));
  }
};

inline void append_reversed(std::vector<CnotGate>& out, const std::vector<CnotGate>& seq) {
  out.insert(out.end(), seq.rbegin(), seq.rend());
}

/// Gates that carry column `from` to column `to` (from > to or from < to) by
/// adjacent column swaps over all rows.
inline std::vector<CnotGate> column_move(const GridEmitter& e, std::size_t from, std::size_t to) {
  std::vector<CnotGate> seq;
  while (from != to) {
    const std::size_t next = from < to ? from + 1 : from - 1;
    for (std::size_t r = 0; r < e.layout.m1; ++r) {
      seq.push_back(e.gate(r, from, r, next));
      seq.push_back(e.gate(r, next, r, from));
      seq.push_back(e.gate(r, from, r, next));
    }
    from = next;
  }
  return seq;
}

inline std::size_t block_rows(const GridLayout& l, std::size_t q) { return std::min(l.m1, l.n - q * l.m1); }

/// Adds a*v into the destination block, where v is the source block data.
///
/// Logical columns: sources sit in [0, w), work in [w, w + s), destinations in
/// [w + s, m2). The source block being read is first moved next to the work
/// area and each destination block likewise, then moved back.
///
/// Per batch of destination rows, work column p serves one output row r_p.
/// Each valid source row is copied across the work area once per source
/// block; in a batch the cell (r, p) is cleared wherever the mask bit b_p[r]
/// is 0, each column is summed into row r_p by two chains meeting there, and
/// row r_p is chained rightwards into the destination. The rightward chain
/// also picks up the summed cells it passes, which are known linear forms, so
/// the masks are solved from the right end leftwards to cancel them. All
/// gates except the final additions into the destination are then undone.
inline void grid_stage(const GridLayout& l, const GF2Matrix& a, bool mirror, std::vector<CnotGate>& out) {
  GridEmitter e{l, mirror, out};
  const std::size_t w = l.w;
  const std::size_t s = l.s;
  const std::size_t last = w + s - 1;  // rightmost work column
  const std::size_t dest = w + s;      // where the active destination block is parked
  auto src_col = [&](std::size_t q) { return mirror ? w - 1 - q : q; };
  auto dst_col = [&](std::size_t q) { return mirror ? 2 * w + s - 1 - q : w + s + q; };

  for (std::size_t qs = 0; qs < w; ++qs) {
    const std::size_t rs = block_rows(l, qs);
    const auto move_src = column_move(e, src_col(qs), w - 1);
    out.insert(out.end(), move_src.begin(), move_src.end());
    std::vector<CnotGate> copy;
    for (std::size_t r = 0; r < rs; ++r) {
      for (std::size_t c = w - 1; c < last; ++c) copy.push_back(e.gate(r, c, r, c + 1));
    }
    out.insert(out.end(), copy.begin(), copy.end());

    for (std::size_t qd = 0; qd < w; ++qd) {
      const std::size_t rd = block_rows(l, qd);
      const auto move_dst = column_move(e, dst_col(qd), dest);
      out.insert(out.end(), move_dst.begin(), move_dst.end());

      // Rows whose column sum takes longest go first and nearest the destination.
      auto cost = [&](std::size_t r) { return std::max(r, rs > r ? rs - 1 - r : std::size_t{0}); };
      std::vector<std::size_t> rows(rd);
      std::iota(rows.begin(), rows.end(), std::size_t{0});
      std::stable_sort(rows.begin(), rows.end(), [&](std::size_t x, std::size_t y) { return cost(x) > cost(y); });

      for (std::size_t b0 = 0; b0 < rows.size(); b0 += s) {
        const std::size_t jn = std::min(s, rows.size() - b0);
        // Column last - k serves row rows[b0 + k].
        std::vector<BitVector> mask(jn, BitVector(l.m1));
        std::vector<BitVector> junk(l.m1, BitVector(l.m1));
        for (std::size_t k = 0; k < jn; ++k) {
          const std::size_t rt = rows[b0 + k];
          const std::size_t t = qd * l.m1 + rt;
          BitVector bits(l.m1);
          for (std::size_t r = 0; r < rs; ++r) {
            if (a.get(t, qs * l.m1 + r)) bits.set(r, true);
          }
          bits ^= junk[rt];
          mask[k] = bits;
          // Value each cell of this column holds once summed, as a form in the source rows.
          BitVector acc(l.m1);
          for (std::size_t r = 0; r <= rt; ++r) {
            if (r < rs && bits.get(r)) acc.flip(r);
            junk[r] ^= acc;
          }
          acc = BitVector(l.m1);
          for (std::size_t r = rs; r-- > rt + 1;) {
            if (bits.get(r)) acc.flip(r);
            junk[r] ^= acc;
          }
        }

        std::vector<CnotGate> fwd;
        GridEmitter f{l, mirror, fwd};
        for (std::size_t k = 0; k < jn; ++k) {
          const std::size_t p = last - k;
          for (std::size_t r = 0; r < rs; ++r) {
            if (!mask[k].get(r)) f.cx(r, p - 1, r, p);
          }
        }
        for (std::size_t k = 0; k < jn; ++k) {
          const std::size_t p = last - k;
          const std::size_t rt = rows[b0 + k];
          for (std::size_t r = 0; r < rt; ++r) f.cx(r, p, r + 1, p);
          for (std::size_t r = rs; r-- > rt + 1;) f.cx(r, p, r - 1, p);
        }
        std::vector<CnotGate> adds;
        for (std::size_t k = 0; k < jn; ++k) {
          const std::size_t p = last - k;
          const std::size_t rt = rows[b0 + k];
          for (std::size_t c = p; c < last; ++c) f.cx(rt, c, rt, c + 1);
          adds.push_back(f.gate(rt, last, rt, dest));
        }
        out.insert(out.end(), fwd.begin(), fwd.end());
        out.insert(out.end(), adds.begin(), adds.end());
        append_reversed(out, fwd);
      }
      append_reversed(out, move_dst);
    }
    append_reversed(out, copy);
    append_reversed(out, move_src);
  }
}

}  // namespace detail

/// Ancilla-assisted synthesis on the layout's grid. The result acts on
/// layout.num_wires() wires; data qubit i starts and ends on
/// layout.data_wire(i), and every other wire starts and ends at 0.
///
/// Stage one adds M x into the output region, stage two adds M^-1 (M x) = x
/// back into the input region (clearing it), and the outputs are then moved
/// into the input columns through the cleared cells.
inline CnotCircuit synthesize_grid_depth(const GF2Matrix& m, const GridLayout& layout) {
  if (m.size() != layout.n) {
    throw std::invalid_argument("matrix is " + std::to_string(m.size()) + "x" + std::to_string(m.size()) +
                                " but layout holds " + std::to_string(layout.n) + " data qubits");
  }
  const GF2Matrix inv = inverse(m);
  std::vector<CnotGate> gates;
  detail::grid_stage(layout, m, false, gates);
  detail::grid_stage(layout, inv, true, gates);

  // Relocation. Every cell left of an output is 0 by now, so each output
  // travels by a copy chain whose trail is cleared right behind it.
  detail::GridEmitter e{layout, false, gates};
  for (std::size_t q = 0; q < layout.w; ++q) {
    const std::size_t from = layout.m2 - layout.w + q;
    for (std::size_t r = 0; r < detail::block_rows(layout, q); ++r) {
      for (std::size_t c = from; c > q; --c) {
        e.cx(r, c, r, c - 1);
        if (c < from) e.cx(r, c, r, c + 1);
      }
      e.cx(r, q, r, q + 1);
    }
  }
  return CnotCircuit(layout.num_wires(), std::move(gates));
}

}  // namespace cnotsynth
