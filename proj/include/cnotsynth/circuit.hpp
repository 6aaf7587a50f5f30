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

#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnotsynth/errors.hpp"
#include "cnotsynth/gf2.hpp"

namespace cnotsynth {

struct CnotGate {
  std::size_t control = 0;
  std::size_t target = 0;

  friend bool operator==(const CnotGate&, const CnotGate&) = default;
};

/// Ordered CNOT gate list on a fixed number of wires.
class CnotCircuit {
 public:
  CnotCircuit() = default;
  explicit CnotCircuit(std::size_t num_qubits) : num_qubits_(num_qubits) {}
  CnotCircuit(std::size_t num_qubits, std::vector<CnotGate> gates) : num_qubits_(num_qubits) {
    gates_.reserve(gates.size());
    for (const auto& g : gates) add(g.control, g.target);
  }

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }
  const std::vector<CnotGate>& gates() const { return gates_; }

  void add(std::size_t control, std::size_t target) {
    if (control >= num_qubits_ || target >= num_qubits_) {
      throw std::out_of_range("CNOT(" + std::to_string(control) + "," + std::to_string(target) +
                              ") outside " + std::to_string(num_qubits_) + " qubits");
    }
    if (control == target) throw std::invalid_argument("CNOT control equals target");
    gates_.push_back({control, target});
  }
  void add(const CnotGate& g) { add(g.control, g.target); }

  void append(const CnotCircuit& other) {
    if (other.num_qubits_ != num_qubits_) throw std::invalid_argument("append: qubit count mismatch");
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  }

  /// Same gates in reverse order; implements the inverse linear map.
  CnotCircuit reversed() const {
    CnotCircuit r(num_qubits_);
    r.gates_.assign(gates_.rbegin(), gates_.rend());
    return r;
  }

  friend bool operator==(const CnotCircuit&, const CnotCircuit&) = default;

 private:
  std::size_t num_qubits_ = 0;
  std::vector<CnotGate> gates_;
};

inline BitVector simulate(const CnotCircuit& c, BitVector x) {
  if (x.size() != c.num_qubits()) {
    throw std::invalid_argument("simulate: state has " + std::to_string(x.size()) +
                                " bits, circuit has " + std::to_string(c.num_qubits()) + " qubits");
  }
  for (const auto& g : c.gates()) {
    if (x.get(g.control)) x.flip(g.target);
  }
  return x;
}

/// Linear map of the circuit: column j is simulate(c, e_j).
inline GF2Matrix to_matrix(const CnotCircuit& c) {
  GF2Matrix m = GF2Matrix::identity(c.num_qubits());
  for (const auto& g : c.gates()) m.add_row(g.control, g.target);
  return m;
}

/// Gate indices grouped by ASAP layer.
struct DepthLayering {
  std::vector<std::vector<std::size_t>> layers;
};

inline DepthLayering layering(const CnotCircuit& c) {
  std::vector<std::size_t> last(c.num_qubits(), 0);
  DepthLayering out;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const auto& g = c.gates()[k];
    const std::size_t layer = std::max(last[g.control], last[g.target]) + 1;
    last[g.control] = last[g.target] = layer;
    if (out.layers.size() < layer) out.layers.resize(layer);
    out.layers[layer - 1].push_back(k);
  }
  return out;
}

inline std::size_t depth(const CnotCircuit& c) {
  std::vector<std::size_t> last(c.num_qubits(), 0);
  std::size_t d = 0;
  for (const auto& g : c.gates()) {
    const std::size_t layer = std::max(last[g.control], last[g.target]) + 1;
    last[g.control] = last[g.target] = layer;
    d = std::max(d, layer);
  }
  return d;
}

/// Three CNOTs exchanging wires a and b.
inline CnotCircuit expand_swap(std::size_t a, std::size_t b, std::size_t num_qubits) {
  if (a == b) throw std::invalid_argument("expand_swap: qubits coincide");
  CnotCircuit c(num_qubits);
  c.add(a, b);
  c.add(b, a);
  c.add(a, b);
  return c;
}

inline CnotCircuit expand_swap(std::size_t a, std::size_t b) {
  return expand_swap(a, b, std::max(a, b) + 1);
}

/// Checks that `impl`, reading input j on wire data_wires[j] with every other
/// wire at 0, leaves reference(e_j) on the data wires and 0 everywhere else.
inline bool check_equivalent(const GF2Matrix& reference, const CnotCircuit& impl,
                             const std::vector<std::size_t>& data_wires) {
  const std::size_t n = reference.size();
  const std::size_t m = impl.num_qubits();
  if (data_wires.size() != n) throw std::invalid_argument("wire map must have one entry per input");
  std::vector<char> seen(m, 0);
  for (std::size_t w : data_wires) {
    if (w >= m || seen[w]) throw std::invalid_argument("wire map has an invalid or repeated wire");
    seen[w] = 1;
  }
  // Track, for every physical wire, which inputs it currently depends on.
  std::vector<BitVector> rows(m, BitVector(n));
  for (std::size_t j = 0; j < n; ++j) rows[data_wires[j]].set(j, true);
  for (const auto& g : impl.gates()) rows[g.target] ^= rows[g.control];
  for (std::size_t w = 0; w < m; ++w) {
    if (!seen[w] && rows[w].any()) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[data_wires[i]] != reference.row(i)) return false;
  }
  return true;
}

inline bool check_equivalent(const GF2Matrix& reference, const CnotCircuit& impl) {
  std::vector<std::size_t> wires(reference.size());
  std::iota(wires.begin(), wires.end(), std::size_t{0});
  return check_equivalent(reference, impl, wires);
}

/// c2 (possibly with ancillas) against c1 under the wire map.
inline bool check_equivalent(const CnotCircuit& c1, const CnotCircuit& c2,
                             const std::vector<std::size_t>& data_wires) {
  return check_equivalent(to_matrix(c1), c2, data_wires);
}

inline bool check_equivalent(const CnotCircuit& c1, const CnotCircuit& c2) {
  return check_equivalent(to_matrix(c1), c2);
}

/// Circuit text format: "n <q>" then one "CNOT <c> <t>" per line.
inline CnotCircuit read_circuit(std::istream& in) {
  std::string line;
  std::optional<CnotCircuit> c;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok) || tok[0] == '#') continue;
    if (!c) {
      std::size_t q = 0;
      if (tok != "n" || !(ss >> q) || q == 0) {
        throw ParseError("line " + std::to_string(lineno) + ": expected 'n <num_qubits>'");
      }
      c.emplace(q);
      continue;
    }
    std::size_t ctl = 0;
    std::size_t tgt = 0;
    if (tok != "CNOT" || !(ss >> ctl >> tgt)) {
      throw ParseError("line " + std::to_string(lineno) + ": expected 'CNOT <control> <target>'");
    }
    try {
      c->add(ctl, tgt);
    } catch (const std::exception& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!c) throw ParseError("missing circuit header");
  return *c;
}

inline void write_circuit(std::ostream& out, const CnotCircuit& c) {
  out << "n " << c.num_qubits() << '\n';
  for (const auto& g : c.gates()) out << "CNOT " << g.control << ' ' << g.target << '\n';
}

}  // namespace cnotsynth
