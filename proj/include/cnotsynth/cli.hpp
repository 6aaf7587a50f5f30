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

/// @file cli.hpp
/// Command-line front end: synth, verify, graph, bench and oracle.
///
/// Exit codes: 0 success, 1 verification failure, 2 usage or input error.
/// Errors are reported as one line, "cnotsynth: error: <kind>: <message>".

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cnotsynth/bench.hpp"
#include "cnotsynth/circuit.hpp"
#include "cnotsynth/errors.hpp"
#include "cnotsynth/gf2.hpp"
#include "cnotsynth/grid.hpp"
#include "cnotsynth/oracle.hpp"
#include "cnotsynth/rowcol.hpp"
#include "cnotsynth/sbe.hpp"
#include "cnotsynth/topology.hpp"

namespace cnotsynth::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class VerifyFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "a,b,c" -> {"a","b","c"}; empty items are dropped.
inline std::vector<std::string> split_list(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline std::size_t parse_count(const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    throw UsageError("expected a non-negative integer, got '" + s + "'");
  }
  if (used != s.size() || s.front() == '-') throw UsageError("expected a non-negative integer, got '" + s + "'");
  return static_cast<std::size_t>(v);
}

/// Comma list of integers; "a..b" expands to the inclusive range.
inline std::vector<std::size_t> parse_counts(const std::string& s) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(s)) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_count(item));
      continue;
    }
    const std::size_t lo = parse_count(item.substr(0, dots));
    const std::size_t hi = parse_count(item.substr(dots + 2));
    if (lo > hi) throw UsageError("empty range '" + item + "'");
    for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

/// "m1xm2[x...]".
inline std::vector<std::size_t> parse_grid(const std::string& s) {
  auto dims = parse_counts([&] {
    std::string t = s;
    for (char& ch : t) {
      if (ch == 'x' || ch == 'X') ch = ',';
    }
    return t;
  }());
  if (dims.size() < 2) throw UsageError("grid must look like m1xm2, got '" + s + "'");
  return dims;
}

/// "preset:<name>", an edge-list file, or a bare preset name.
inline TopologyGraph resolve_graph(const std::string& spec) {
  if (spec.rfind("preset:", 0) == 0 || std::filesystem::exists(spec)) return load_graph(spec);
  return preset_graph(spec);
}

inline GF2Matrix load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open matrix file '" + path + "'");
  return read_matrix(in);
}

inline CnotCircuit load_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open circuit file '" + path + "'");
  return read_circuit(in);
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  return out;
}

inline std::uint64_t seed_or_entropy(const std::vector<std::uint64_t>& given, std::ostream& err) {
  if (!given.empty()) return given.front();
  std::random_device rd;
  const std::uint64_t seed = (std::uint64_t{rd()} << 32) | rd();
  err << "cnotsynth: seed " << seed << '\n';
  return seed;
}

struct SynthArgs {
  std::string algo = "rowcol";
  std::string graph;
  std::string grid;
  std::string matrix;
  std::string out;
  std::string stats;
  std::string strategy = "mindeg";
  std::size_t k = 0;
  bool verify_steps = false;
};

inline int cmd_synth(const SynthArgs& a, std::ostream& out) {
  const GF2Matrix m = load_matrix_file(a.matrix);
  nlohmann::json stats = {{"schema", 1}, {"algo", a.algo}, {"n", m.size()}};
  const auto t0 = std::chrono::steady_clock::now();
  CnotCircuit c;
  if (a.algo == "grid-depth") {
    if (a.grid.empty()) throw UsageError("--grid is required for grid-depth");
    const GridLayout layout = make_grid_layout(m.size(), parse_grid(a.grid));
    c = synthesize_grid_depth(m, layout);
    stats["grid"] = layout.dims;
    stats["ancillas"] = layout.num_wires() - layout.n;
    stats["data_wires"] = layout.data_wires();
    stats["graph"] = layout.graph().name();
  } else {
    if (a.graph.empty()) throw UsageError("--graph is required for " + a.algo);
    const TopologyGraph g = resolve_graph(a.graph);
    stats["graph"] = g.name().empty() ? a.graph : g.name();
    if (a.algo == "rowcol") {
      RowcolOptions opts;
      try {
        opts.strategy = parse_peel_strategy(a.strategy);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      opts.verify_steps = a.verify_steps;
      c = synthesize_rowcol(m, g, opts);
      stats["strategy"] = a.strategy;
    } else if (a.algo == "sbe") {
      const SbeParams p = a.k ? params_for_k(m.size(), a.k) : choose_params(g);
      SbeResult r = synthesize_sbe_labeled(m, g, p);
      c = std::move(r.circuit);
      stats["label"] = r.label;
      stats["k"] = p.k;
      stats["s"] = p.s;
      stats["sparse"] = p.sparse;
    } else {
      throw UsageError("unknown --algo '" + a.algo + "' (expected rowcol, sbe or grid-depth)");
    }
  }
  stats["millis"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  stats["size"] = c.size();
  stats["depth"] = depth(c);
  if (a.out.empty()) {
    write_circuit(out, c);
  } else {
    auto f = open_out(a.out);
    write_circuit(f, c);
  }
  if (!a.stats.empty()) {
    auto f = open_out(a.stats);
    f << stats.dump(2) << '\n';
  }
  if (!a.out.empty()) out << "size " << c.size() << " depth " << depth(c) << '\n';
  return kExitOk;
}

struct VerifyArgs {
  std::string circuit;
  std::string matrix;
  std::string graph;
  std::string data_wires;
};

inline int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const CnotCircuit c = load_circuit_file(a.circuit);
  const GF2Matrix m = load_matrix_file(a.matrix);
  bool eq = false;
  if (a.data_wires.empty()) {
    if (c.num_qubits() != m.size()) {
      throw UsageError("circuit has " + std::to_string(c.num_qubits()) + " qubits but matrix is " +
                       std::to_string(m.size()) + "x" + std::to_string(m.size()) + "; pass --data-wires");
    }
    eq = check_equivalent(m, c);
  } else {
    std::vector<std::size_t> wires;
    for (const auto& item : split_list(a.data_wires)) wires.push_back(parse_count(item));
    try {
      eq = check_equivalent(m, c, wires);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  out << (eq ? "EQUIVALENT" : "NOT EQUIVALENT") << '\n';
  bool valid = true;
  if (!a.graph.empty()) {
    const TopologyGraph g = resolve_graph(a.graph);
    if (g.num_vertices() != c.num_qubits()) {
      throw UsageError("graph has " + std::to_string(g.num_vertices()) + " vertices but circuit has " +
                       std::to_string(c.num_qubits()) + " qubits");
    }
    valid = validate_circuit(g, c);
    out << (valid ? "VALID" : "INVALID") << '\n';
  }
  return eq && valid ? kExitOk : kExitVerifyFailed;
}

inline int cmd_graph(const std::string& preset, const std::string& path, std::ostream& out) {
  const TopologyGraph g = resolve_graph(preset);
  if (path.empty()) {
    write_edge_list(out, g);
  } else {
    auto f = open_out(path);
    write_edge_list(f, g);
  }
  return kExitOk;
}

struct BenchArgs {
  std::string graphs = "ibmq20,t20";
  std::string sizes = "20,50,100,200,300,400,500,600,700,800";
  std::string sides = "4..11";
  std::string algos;
  std::size_t samples = 200;
  std::vector<std::uint64_t> seed;
  std::size_t threads = 0;
  std::string csv;
};

inline int emit_bench(const std::vector<BenchRecord>& records, const BenchArgs& a, std::ostream& out) {
  if (a.csv.empty()) {
    write_bench_csv(out, records);
  } else {
    auto f = open_out(a.csv);
    write_bench_csv(f, records);
  }
  return kExitOk;
}

inline BenchOptions bench_options(const BenchArgs& a, std::ostream& err) {
  BenchOptions o;
  o.samples = a.samples;
  if (o.samples == 0) throw UsageError("--samples must be at least 1");
  o.seed = seed_or_entropy(a.seed, err);
  if (a.threads) o.threads = a.threads;
  return o;
}

inline int cmd_bench_size(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<TopologyGraph> graphs;
  for (const auto& spec : split_list(a.graphs)) graphs.push_back(resolve_graph(spec));
  const auto algos = split_list(a.algos.empty() ? "rowcol" : a.algos);
  for (const auto& algo : algos) {
    if (algo != "rowcol" && algo != "rowcol-bfsleaf" && algo != "sbe") throw UsageError("unknown algo '" + algo + "'");
  }
  return emit_bench(run_size_experiment(graphs, parse_counts(a.sizes), algos, bench_options(a, err)), a, out);
}

inline int cmd_bench_depth(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  const auto algos = split_list(a.algos.empty() ? "grid-depth,rowcol" : a.algos);
  for (const auto& algo : algos) {
    if (algo != "grid-depth" && algo != "rowcol" && algo != "rowcol-bfsleaf" && algo != "sbe") {
      throw UsageError("unknown algo '" + algo + "'");
    }
  }
  return emit_bench(run_depth_experiment(parse_counts(a.sides), algos, bench_options(a, err)), a, out);
}

inline int cmd_oracle(const std::string& graph, std::size_t n, const std::string& csv, std::ostream& out) {
  if (n < 2 || n > kOracleMaxQubits) throw UsageError("--n must be between 2 and 4");
  TopologyGraph g;
  if (graph == "path") {
    g = path_graph(n);
  } else if (graph == "complete") {
    g = complete_graph(n);
  } else {
    g = resolve_graph(graph);
  }
  if (g.num_vertices() != n) {
    throw UsageError("graph has " + std::to_string(g.num_vertices()) + " vertices, --n is " + std::to_string(n));
  }
  const OptimalSizeTable table = optimal_size_table(g);
  out << "matrices " << table.size() << " (GL order " << gl2_order(n) << ") max distance "
      << table.max_distance() << '\n';
  if (!csv.empty()) {
    auto f = open_out(csv);
    f << "matrix_id,distance\n";
    for (const auto& [key, d] : table.entries()) f << key << ',' << d << '\n';
  }
  return table.size() == gl2_order(n) ? kExitOk : kExitVerifyFailed;
}

/// Parses argv and runs one subcommand.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"CNOT circuit synthesis under connectivity constraints", "cnotsynth"};
  app.require_subcommand(1);

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "Synthesize a circuit for a matrix");
  synth->add_option("--algo", sa.algo, "rowcol, sbe or grid-depth")->capture_default_str();
  synth->add_option("--graph", sa.graph, "preset:<name>, preset name, or edge-list file");
  synth->add_option("--grid", sa.grid, "grid-depth layout, e.g. 16x16");
  synth->add_option("--matrix", sa.matrix, "matrix file")->required();
  synth->add_option("--out", sa.out, "circuit output file (default stdout)");
  synth->add_option("--stats", sa.stats, "stats JSON output file");
  synth->add_option("--strategy", sa.strategy, "rowcol peeling: mindeg or bfsleaf")->capture_default_str();
  synth->add_option("--k", sa.k, "sbe batch parameter (default from min degree)");
  synth->add_flag("--verify-steps", sa.verify_steps, "check rowcol post-conditions after every step");
  std::vector<std::uint64_t> unused_seed;
  synth->add_option("--seed", unused_seed, "accepted for uniformity; synthesis is deterministic")->expected(0, 1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a circuit against a matrix");
  verify->add_option("--circuit", va.circuit, "circuit file")->required();
  verify->add_option("--matrix", va.matrix, "matrix file")->required();
  verify->add_option("--graph", va.graph, "also check every gate lies on this graph");
  verify->add_option("--data-wires", va.data_wires, "comma list: wire of each data qubit");

  std::string preset;
  std::string graph_out;
  auto* graph = app.add_subcommand("graph", "Write a preset graph as an edge list");
  graph->add_option("--preset", preset, "preset name")->required();
  graph->add_option("--out", graph_out, "output file (default stdout)");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Seeded benchmark experiments");
  bench->require_subcommand(1);
  auto* bsize = bench->add_subcommand("size", "Resynthesize walk-sampled circuits");
  bsize->add_option("--graphs", ba.graphs, "comma list of graphs")->capture_default_str();
  bsize->add_option("--sizes", ba.sizes, "comma list of gate counts; a..b ranges allowed")->capture_default_str();
  bsize->add_option("--algos", ba.algos, "rowcol, rowcol-bfsleaf, sbe (default rowcol)");
  auto* bdepth = bench->add_subcommand("depth", "Square-grid depth runs");
  bdepth->add_option("--sides", ba.sides, "grid sides, e.g. 4..11")->capture_default_str();
  bdepth->add_option("--algos", ba.algos, "grid-depth, rowcol (default both)");
  for (auto* sub : {bsize, bdepth}) {
    sub->add_option("--samples", ba.samples, "samples per point")->capture_default_str();
    sub->add_option("--seed", ba.seed, "random seed (default: drawn and printed)")->expected(0, 1);
    sub->add_option("--threads", ba.threads, "worker threads (default: all cores)");
    sub->add_option("--csv", ba.csv, "CSV output file (default stdout)");
  }

  std::string oracle_graph = "path";
  std::size_t oracle_n = 3;
  std::string oracle_csv;
  auto* oracle = app.add_subcommand("oracle", "Exact minimum gate counts for n <= 4");
  oracle->add_option("--graph", oracle_graph, "path, complete, or any graph spec")->capture_default_str();
  oracle->add_option("--n", oracle_n, "qubits, 2..4")->capture_default_str();
  oracle->add_option("--csv", oracle_csv, "write matrix_id,distance rows");
  std::vector<std::uint64_t> oracle_seed;
  oracle->add_option("--seed", oracle_seed, "accepted for uniformity; the table is deterministic")->expected(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "cnotsynth: error: usage: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (*synth) return cmd_synth(sa, out);
    if (*verify) return cmd_verify(va, out);
    if (*graph) return cmd_graph(preset, graph_out, out);
    if (*bsize) return cmd_bench_size(ba, out, err);
    if (*bdepth) return cmd_bench_depth(ba, out, err);
    if (*oracle) return cmd_oracle(oracle_graph, oracle_n, oracle_csv, out);
  } catch (const UsageError& e) {
    err << "cnotsynth: error: usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BenchError& e) {
    err << "cnotsynth: error: verification: " << e.what() << '\n';
    return kExitVerifyFailed;
  } catch (const ParseError& e) {
    err << "cnotsynth: error: parse: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SingularMatrixError& e) {
    err << "cnotsynth: error: singular: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DisconnectedError& e) {
    err << "cnotsynth: error: disconnected: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "cnotsynth: error: input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "cnotsynth: error: internal: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
  return kExitUsage;
}

}  // namespace cnotsynth::cli
