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

/// @file topology.hpp
/// Connectivity graphs, Steiner trees and named device presets.

#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cnotsynth/circuit.hpp"
#include "cnotsynth/errors.hpp"

namespace cnotsynth {

inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

/// Undirected simple graph with sorted adjacency and an active-vertex mask.
/// Deactivated vertices are invisible to every traversal.
class TopologyGraph {
 public:
  TopologyGraph() = default;
  explicit TopologyGraph(std::size_t n, std::string name = {})
      : name_(std::move(name)), adj_(n), active_(n, 1), num_active_(n) {}

  std::size_t num_vertices() const { return adj_.size(); }
  std::size_t num_edges() const { return num_edges_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  void add_edge(std::size_t u, std::size_t v) {
    if (u >= adj_.size() || v >= adj_.size()) throw std::out_of_range("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    auto& au = adj_[u];
    const auto it = std::lower_bound(au.begin(), au.end(), v);
    if (it != au.end() && *it == v) return;
    au.insert(it, v);
    auto& av = adj_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    ++num_edges_;
  }

  bool has_edge(std::size_t u, std::size_t v) const {
    if (u >= adj_.size() || v >= adj_.size()) return false;
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  /// All neighbours, ascending, ignoring the active mask.
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_[v]; }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      for (std::size_t v : adj_[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  bool is_active(std::size_t v) const { return active_[v] != 0; }
  std::size_t num_active() const { return num_active_; }
  void deactivate(std::size_t v) {
    if (active_[v]) {
      active_[v] = 0;
      --num_active_;
    }
  }
  void reset_active() {
    std::fill(active_.begin(), active_.end(), 1);
    num_active_ = adj_.size();
  }

  /// Degree counted over active neighbours.
  std::size_t degree(std::size_t v) const {
    std::size_t d = 0;
    for (std::size_t w : adj_[v]) d += active_[w];
    return d;
  }
  std::size_t min_degree() const {
    std::size_t d = kNone;
    for (std::size_t v = 0; v < adj_.size(); ++v) {
      if (active_[v]) d = std::min(d, degree(v));
    }
    return d == kNone ? 0 : d;
  }
  std::size_t max_degree() const {
    std::size_t d = 0;
    for (std::size_t v = 0; v < adj_.size(); ++v) {
      if (active_[v]) d = std::max(d, degree(v));
    }
    return d;
  }

  bool is_connected() const {
    std::size_t start = kNone;
    for (std::size_t v = 0; v < adj_.size(); ++v) {
      if (active_[v]) {
        start = v;
        break;
      }
    }
    if (start == kNone) return true;
    std::vector<char> seen(adj_.size(), 0);
    std::vector<std::size_t> stack{start};
    seen[start] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t w : adj_[u]) {
        if (active_[w] && !seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == num_active_;
  }

  /// BFS from `source` over active vertices. `dist[v]` is kNone when unreachable;
  /// `parent[v]` is the first-discovered predecessor (neighbours scanned ascending).
  /// Stops early once every vertex in `stop_when_found` has been reached.
  void bfs(std::size_t source, std::vector<std::size_t>& dist, std::vector<std::size_t>& parent,
           const std::vector<std::size_t>* stop_when_found = nullptr) const {
    const std::size_t n = adj_.size();
    dist.assign(n, kNone);
    parent.assign(n, kNone);
    std::size_t remaining = 0;
    std::vector<char> wanted;
    if (stop_when_found) {
      wanted.assign(n, 0);
      for (std::size_t t : *stop_when_found) {
        if (!wanted[t]) {
          wanted[t] = 1;
          ++remaining;
        }
      }
    }
    std::vector<std::size_t> queue;
    queue.reserve(num_active_);
    queue.push_back(source);
    dist[source] = 0;
    if (stop_when_found && wanted[source] && --remaining == 0) return;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t u = queue[head];
      for (std::size_t w : adj_[u]) {
        if (!active_[w] || dist[w] != kNone) continue;
        dist[w] = dist[u] + 1;
        parent[w] = u;
        queue.push_back(w);
        if (stop_when_found && wanted[w] && --remaining == 0) return;
      }
    }
  }

 private:
  std::string name_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<char> active_;
  std::size_t num_active_ = 0;
  std::size_t num_edges_ = 0;
};

/// Marks active cut vertices (articulation points) of the active subgraph.
inline std::vector<char> cut_vertices(const TopologyGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<char> cut(n, 0);
  std::vector<std::size_t> disc(n, kNone);
  std::vector<std::size_t> low(n, 0);
  std::size_t timer = 0;
  // Iterative DFS: frames hold (vertex, parent, next neighbour position, child count).
  struct Frame {
    std::size_t v;
    std::size_t parent;
    std::size_t pos;
    std::size_t children;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (!g.is_active(root) || disc[root] != kNone) continue;
    std::vector<Frame> stack{{root, kNone, 0, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& nb = g.neighbors(f.v);
      if (f.pos < nb.size()) {
        const std::size_t w = nb[f.pos++];
        if (!g.is_active(w) || w == f.parent) continue;
        if (disc[w] == kNone) {
          ++f.children;
          disc[w] = low[w] = timer++;
          stack.push_back({w, f.v, 0, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (stack.empty()) {
        if (done.children >= 2) cut[done.v] = 1;
      } else {
        Frame& up = stack.back();
        low[up.v] = std::min(low[up.v], low[done.v]);
        if (up.parent != kNone && low[done.v] >= disc[up.v]) cut[up.v] = 1;
      }
    }
  }
  return cut;
}

/// Lowest-index active vertex whose removal leaves the active part connected.
inline std::size_t find_non_cut_vertex(const TopologyGraph& g) {
  if (g.num_active() == 0) throw std::invalid_argument("find_non_cut_vertex: empty graph");
  if (!g.is_connected()) throw DisconnectedError("active subgraph is not connected");
  const auto cut = cut_vertices(g);
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (g.is_active(v) && !cut[v]) return v;
  }
  throw std::logic_error("connected graph without a non-cut vertex");
}

/// Minimum-edge path u..v over active vertices.
inline std::vector<std::size_t> shortest_path(const TopologyGraph& g, std::size_t u, std::size_t v) {
  if (!g.is_active(u) || !g.is_active(v)) throw std::invalid_argument("shortest_path: inactive endpoint");
  std::vector<std::size_t> dist;
  std::vector<std::size_t> parent;
  // Search from v so that walking parents from u yields the path in order.
  const std::vector<std::size_t> want{u};
  g.bfs(v, dist, parent, &want);
  if (dist[u] == kNone) {
    throw DisconnectedError("no path between " + std::to_string(u) + " and " + std::to_string(v));
  }
  std::vector<std::size_t> path{u};
  for (std::size_t x = u; x != v;) {
    x = parent[x];
    path.push_back(x);
  }
  return path;
}

/// Rooted tree over a subset of graph vertices.
struct SteinerTree {
  std::size_t root = kNone;
  std::vector<std::size_t> parent;                 // kNone for the root and non-members
  std::vector<std::vector<std::size_t>> children;  // ascending
  std::vector<std::size_t> nodes;                  // preorder
  std::vector<char> terminal;

  std::size_t size() const { return nodes.size(); }
  bool contains(std::size_t v) const { return v == root || parent[v] != kNone; }
  bool is_terminal(std::size_t v) const { return terminal[v] != 0; }

  std::vector<std::size_t> preorder() const { return nodes; }
  std::vector<std::size_t> postorder() const {
    std::vector<std::size_t> out;
    out.reserve(nodes.size());
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    while (!stack.empty()) {
      auto& [v, pos] = stack.back();
      if (pos < children[v].size()) {
        const std::size_t c = children[v][pos++];
        stack.emplace_back(c, 0);
      } else {
        out.push_back(v);
        stack.pop_back();
      }
    }
    return out;
  }
};

/// Metric-closure 2-approximation: MST over terminal BFS distances, shortest
/// paths expanded, re-spanned by BFS from the root, non-terminal leaves pruned.
/// The root is always a member and counts as a terminal.
inline SteinerTree steiner_tree_2approx(const TopologyGraph& g, std::vector<std::size_t> terminals,
                                        std::size_t root) {
  const std::size_t n = g.num_vertices();
  if (root >= n || !g.is_active(root)) throw std::invalid_argument("steiner root must be active");
  terminals.push_back(root);
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
  for (std::size_t t : terminals) {
    if (t >= n || !g.is_active(t)) throw std::invalid_argument("steiner terminal must be active");
  }

  SteinerTree tree;
  tree.root = root;
  tree.parent.assign(n, kNone);
  tree.children.assign(n, {});
  tree.terminal.assign(n, 0);
  for (std::size_t t : terminals) tree.terminal[t] = 1;
  if (terminals.size() == 1) {
    tree.nodes = {root};
    return tree;
  }

  const std::size_t k = terminals.size();
  std::vector<std::vector<std::size_t>> dist(k);
  std::vector<std::vector<std::size_t>> bfs_parent(k);
  for (std::size_t a = 0; a < k; ++a) {
    g.bfs(terminals[a], dist[a], bfs_parent[a], &terminals);
    for (std::size_t t : terminals) {
      if (dist[a][t] == kNone) throw DisconnectedError("terminals span several components");
    }
  }

  // Prim over the terminal metric closure, started at the root.
  const std::size_t root_idx =
      static_cast<std::size_t>(std::lower_bound(terminals.begin(), terminals.end(), root) -
                               terminals.begin());
  std::vector<std::size_t> key(k, kNone);
  std::vector<std::size_t> via(k, kNone);
  std::vector<char> in_tree(k, 0);
  key[root_idx] = 0;
  std::vector<char> member(n, 0);
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t best = kNone;
    for (std::size_t a = 0; a < k; ++a) {
      if (!in_tree[a] && (best == kNone || key[a] < key[best])) best = a;
    }
    in_tree[best] = 1;
    member[terminals[best]] = 1;
    if (via[best] != kNone) {
      // Walk from terminals[best] back to terminals[via] along via's BFS tree.
      const auto& par = bfs_parent[via[best]];
      for (std::size_t x = terminals[best]; x != terminals[via[best]]; x = par[x]) member[x] = 1;
    }
    for (std::size_t a = 0; a < k; ++a) {
      if (!in_tree[a] && dist[best][terminals[a]] < key[a]) {
        key[a] = dist[best][terminals[a]];
        via[a] = best;
      }
    }
  }

  // Re-span the member set by BFS from the root.
  std::vector<std::size_t> order{root};
  std::vector<char> seen(n, 0);
  seen[root] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const std::size_t u = order[head];
    for (std::size_t w : g.neighbors(u)) {
      if (member[w] && !seen[w] && g.is_active(w)) {
        seen[w] = 1;
        tree.parent[w] = u;
        order.push_back(w);
      }
    }
  }

  // Prune non-terminal leaves, deepest first; the BFS order makes one reverse sweep enough.
  std::vector<std::size_t> child_count(n, 0);
  for (std::size_t v : order) {
    if (v != root) ++child_count[tree.parent[v]];
  }
  std::vector<char> keep(n, 0);
  for (std::size_t v : order) keep[v] = 1;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t v = *it;
    if (v != root && !tree.terminal[v] && child_count[v] == 0) {
      keep[v] = 0;
      --child_count[tree.parent[v]];
      tree.parent[v] = kNone;
    }
  }
  for (std::size_t v : order) {
    if (keep[v] && v != root) tree.children[tree.parent[v]].push_back(v);
  }
  for (auto& c : tree.children) std::sort(c.begin(), c.end());
  std::vector<std::size_t> stack{root};
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    tree.nodes.push_back(v);
    for (auto it = tree.children[v].rbegin(); it != tree.children[v].rend(); ++it) {
      stack.push_back(*it);
    }
  }
  return tree;
}

/// True iff every gate acts on an edge of g.
inline bool validate_circuit(const TopologyGraph& g, const CnotCircuit& c) {
  if (c.num_qubits() != g.num_vertices()) {
    throw std::invalid_argument("validate_circuit: circuit has " + std::to_string(c.num_qubits()) +
                                " qubits, graph has " + std::to_string(g.num_vertices()) +
                                " vertices");
  }
  return std::all_of(c.gates().begin(), c.gates().end(),
                     [&](const CnotGate& gt) { return g.has_edge(gt.control, gt.target); });
}

// ---------------------------------------------------------------------------
// Presets

inline TopologyGraph path_graph(std::size_t n) {
  if (n == 0) throw std::invalid_argument("path needs at least one vertex");
  TopologyGraph g(n, "path" + std::to_string(n));
  for (std::size_t v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline TopologyGraph complete_graph(std::size_t n) {
  if (n == 0) throw std::invalid_argument("complete graph needs at least one vertex");
  TopologyGraph g(n, "complete" + std::to_string(n));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

/// Row-major grid; the last dimension varies fastest.
inline TopologyGraph grid_graph(const std::vector<std::size_t>& dims) {
  if (dims.empty()) throw std::invalid_argument("grid needs at least one dimension");
  std::size_t total = 1;
  std::string name = "grid";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] == 0) throw std::invalid_argument("grid dimension must be positive");
    total *= dims[i];
    name += (i ? "x" : "") + std::to_string(dims[i]);
  }
  TopologyGraph g(total, name);
  std::size_t stride = 1;
  for (std::size_t d = dims.size(); d-- > 0;) {
    for (std::size_t v = 0; v < total; ++v) {
      if ((v / stride) % dims[d] + 1 < dims[d]) g.add_edge(v, v + stride);
    }
    stride *= dims[d];
  }
  return g;
}

namespace detail {

// 20-qubit layouts drawn on a 5-wide, 4-high lattice. Vertex = row * 5 + col,
// row 0 at the top. Entries are (col, height) with height 0 at the bottom.
struct Cell {
  int x;
  int y;
};
inline std::size_t lattice_index(Cell c) { return static_cast<std::size_t>((3 - c.y) * 5 + c.x); }

inline TopologyGraph from_cells(const std::string& name, std::initializer_list<std::pair<Cell, Cell>> es,
                                bool with_lattice) {
  TopologyGraph g(20, name);
  if (with_lattice) {
    for (int y = 0; y < 4; ++y) {
      for (int x = 0; x < 5; ++x) {
        if (x + 1 < 5) g.add_edge(lattice_index({x, y}), lattice_index({x + 1, y}));
        if (y + 1 < 4) g.add_edge(lattice_index({x, y}), lattice_index({x, y + 1}));
      }
    }
  }
  for (const auto& [a, b] : es) g.add_edge(lattice_index(a), lattice_index(b));
  return g;
}

}  // namespace detail

/// 4x5 lattice with 12 crossing diagonals: 31 + 12 = 43 edges.
inline TopologyGraph ibmq20_graph() {
  using detail::Cell;
  return detail::from_cells("ibmq20",
                            {{Cell{1, 3}, Cell{2, 2}}, {Cell{2, 3}, Cell{1, 2}},
                             {Cell{3, 3}, Cell{4, 2}}, {Cell{4, 3}, Cell{3, 2}},
                             {Cell{0, 2}, Cell{1, 1}}, {Cell{1, 2}, Cell{0, 1}},
                             {Cell{2, 2}, Cell{3, 1}}, {Cell{3, 2}, Cell{2, 1}},
                             {Cell{1, 1}, Cell{2, 0}}, {Cell{2, 1}, Cell{1, 0}},
                             {Cell{3, 1}, Cell{4, 0}}, {Cell{4, 1}, Cell{3, 0}}},
                            true);
}

/// 20-vertex tree shaped like a T: two full top rows, branches hanging below.
inline TopologyGraph t20_graph() {
  using detail::Cell;
  return detail::from_cells(
      "t20",
      {// the two top rows
       {Cell{0, 3}, Cell{1, 3}}, {Cell{1, 3}, Cell{2, 3}}, {Cell{2, 3}, Cell{3, 3}},
       {Cell{3, 3}, Cell{4, 3}}, {Cell{0, 2}, Cell{1, 2}}, {Cell{1, 2}, Cell{2, 2}},
       {Cell{2, 2}, Cell{3, 2}}, {Cell{3, 2}, Cell{4, 2}}, {Cell{0, 2}, Cell{0, 3}},
       // lower branches
       {Cell{0, 0}, Cell{0, 1}}, {Cell{0, 0}, Cell{1, 0}}, {Cell{1, 0}, Cell{2, 0}},
       {Cell{0, 1}, Cell{1, 1}}, {Cell{1, 1}, Cell{2, 1}}, {Cell{2, 1}, Cell{2, 2}},
       {Cell{4, 2}, Cell{4, 1}}, {Cell{4, 1}, Cell{4, 0}}, {Cell{4, 0}, Cell{3, 0}},
       {Cell{3, 0}, Cell{3, 1}}},
      false);
}

inline TopologyGraph athens5_graph() {
  TopologyGraph g = path_graph(5);
  g.set_name("athens5");
  return g;
}

/// Two triangles sharing vertex 2.
inline TopologyGraph yorktown5_graph() {
  TopologyGraph g(5, "yorktown5");
  for (auto [u, v] : {std::pair{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}}) {
    g.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
  }
  return g;
}

/// Accepts "ibmq20", "t20", "athens5", "yorktown5", and parameterised forms
/// such as "path(20)", "path20", "complete(16)", "grid(4,5)", "grid4x5".
inline TopologyGraph preset_graph(const std::string& spec) {
  std::string lower;
  for (char ch : spec) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (lower == "ibmq20") return ibmq20_graph();
  if (lower == "t20") return t20_graph();
  if (lower == "athens5") return athens5_graph();
  if (lower == "yorktown5") return yorktown5_graph();

  std::size_t pos = 0;
  while (pos < lower.size() && std::isalpha(static_cast<unsigned char>(lower[pos]))) ++pos;
  const std::string family = lower.substr(0, pos);
  std::vector<std::size_t> params;
  std::string digits;
  for (; pos <= lower.size(); ++pos) {
    const char ch = pos < lower.size() ? lower[pos] : ',';
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
    } else if (ch == ',' || ch == 'x' || ch == ')' || ch == '(' || ch == ' ') {
      if (!digits.empty()) {
        params.push_back(std::stoul(digits));
        digits.clear();
      }
    } else {
      throw std::invalid_argument("unknown preset '" + spec + "'");
    }
  }
  if (family == "path" && params.size() == 1 && params[0] >= 1) return path_graph(params[0]);
  if (family == "complete" && params.size() == 1 && params[0] >= 1) return complete_graph(params[0]);
  if (family == "grid" && !params.empty()) return grid_graph(params);
  throw std::invalid_argument("unknown preset or bad dimensions '" + spec + "'");
}

/// Edge-list format: "n m" then m lines "u v".
inline TopologyGraph read_edge_list(std::istream& in) {
  std::size_t n = 0;
  std::size_t m = 0;
  if (!(in >> n >> m) || n == 0) throw ParseError("edge list header must be 'n m' with n >= 1");
  TopologyGraph g(n);
  for (std::size_t e = 0; e < m; ++e) {
    std::size_t u = 0;
    std::size_t v = 0;
    if (!(in >> u >> v)) throw ParseError("expected " + std::to_string(m) + " edges, got " + std::to_string(e));
    if (u >= n || v >= n || u == v) {
      throw ParseError("bad edge " + std::to_string(u) + " " + std::to_string(v));
    }
    g.add_edge(u, v);
  }
  return g;
}

inline void write_edge_list(std::ostream& out, const TopologyGraph& g) {
  const auto es = g.edges();
  out << g.num_vertices() << ' ' << es.size() << '\n';
  for (const auto& [u, v] : es) out << u << ' ' << v << '\n';
}

/// "preset:<name>" or a path to an edge-list file.
inline TopologyGraph load_graph(const std::string& spec) {
  constexpr std::string_view kPrefix = "preset:";
  if (spec.rfind(kPrefix, 0) == 0) return preset_graph(spec.substr(kPrefix.size()));
  std::ifstream in(spec);
  if (!in) throw std::invalid_argument("cannot open graph file '" + spec + "'");
  TopologyGraph g = read_edge_list(in);
  g.set_name(spec);
  return g;
}

}  // namespace cnotsynth
