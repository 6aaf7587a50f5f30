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

/// @file bench.hpp
/// Seeded synthesis experiments. Every sample draws from its own generator,
/// seeded from (seed, experiment point, sample index), so results do not
/// depend on the number of worker threads.

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cnotsynth/circuit.hpp"
#include "cnotsynth/gf2.hpp"
#include "cnotsynth/grid.hpp"
#include "cnotsynth/rowcol.hpp"
#include "cnotsynth/sbe.hpp"
#include "cnotsynth/topology.hpp"

namespace cnotsynth {

/// Raised when a benchmarked circuit fails verification. Carries the seed
/// needed to replay the failing sample.
class BenchError : public std::runtime_error {
 public:
  BenchError(const std::string& what, std::uint64_t sample_seed)
      : std::runtime_error(what + " (sample seed " + std::to_string(sample_seed) + ")"),
        sample_seed_(sample_seed) {}
  std::uint64_t sample_seed() const { return sample_seed_; }

 private:
  std::uint64_t sample_seed_;
};

struct BenchRecord {
  std::string graph;
  std::string algo;
  std::size_t input = 0;  // gate count for size runs, data qubits for depth runs
  std::size_t samples = 0;
  double mean_size = 0.0;
  double mean_depth = 0.0;
  std::uint64_t seed = 0;
  double millis = 0.0;
};

/// Deterministic per-sample seed.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t point, std::uint64_t sample) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(point), static_cast<std::uint32_t>(point >> 32),
                    static_cast<std::uint32_t>(sample), static_cast<std::uint32_t>(sample >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (std::uint64_t{out[0]} << 32) | out[1];
}

/// Uniform edge, uniform direction, `size` times.
template <typename Rng>
CnotCircuit sample_walk_circuit(const TopologyGraph& g, std::size_t size, Rng& rng) {
  const auto edges = g.edges();
  CnotCircuit c(g.num_vertices());
  if (size == 0) return c;
  if (edges.empty()) throw std::invalid_argument("graph has no edges to sample from");
  std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
  std::uniform_int_distribution<int> flip(0, 1);
  for (std::size_t k = 0; k < size; ++k) {
    auto [u, v] = edges[pick(rng)];
    if (flip(rng)) std::swap(u, v);
    c.add(u, v);
  }
  return c;
}

/// Size algorithms: "rowcol" (minimum-degree peeling), "rowcol-bfsleaf", "sbe".
inline CnotCircuit synthesize_by_name(const std::string& algo, const GF2Matrix& m, const TopologyGraph& g) {
  if (algo == "rowcol") return synthesize_rowcol(m, g);
  if (algo == "rowcol-bfsleaf") return synthesize_rowcol(m, g, {PeelStrategy::kBfsLeaf, false});
  if (algo == "sbe") return synthesize_sbe(m, g);
  throw std::invalid_argument("unknown algorithm '" + algo + "' (expected rowcol, rowcol-bfsleaf or sbe)");
}

namespace detail {

struct SampleResult {
  std::size_t size = 0;
  std::size_t depth = 0;
};

/// Runs job(i) for i in [0, count) on up to `threads` workers. The first
/// exception (by index) is rethrown.
template <typename Job>
std::vector<SampleResult> run_samples(std::size_t count, std::size_t threads, Job job) {
  std::vector<SampleResult> out(count);
  std::vector<std::exception_ptr> err(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < count;) {
      try {
        out[i] = job(i);
      } catch (...) {
        err[i] = std::current_exception();
      }
    }
  };
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : err) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

inline BenchRecord summarize(std::string graph, std::string algo, std::size_t input, std::uint64_t seed,
                             const std::vector<SampleResult>& rs, double millis) {
  BenchRecord rec{std::move(graph), std::move(algo), input, rs.size(), 0.0, 0.0, seed, millis};
  for (const auto& r : rs) {
    rec.mean_size += static_cast<double>(r.size);
    rec.mean_depth += static_cast<double>(r.depth);
  }
  if (!rs.empty()) {
    rec.mean_size /= static_cast<double>(rs.size());
    rec.mean_depth /= static_cast<double>(rs.size());
  }
  return rec;
}

inline double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

inline std::size_t default_threads() { return std::max(1U, std::thread::hardware_concurrency()); }

}  // namespace detail

struct BenchOptions {
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  std::size_t threads = detail::default_threads();
};

/// Walk-sampled circuits of each size, resynthesized by each algorithm. All
/// algorithms see the same circuits.
inline std::vector<BenchRecord> run_size_experiment(const std::vector<TopologyGraph>& graphs,
                                                    const std::vector<std::size_t>& sizes,
                                                    const std::vector<std::string>& algos,
                                                    const BenchOptions& opt) {
  std::vector<BenchRecord> out;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const TopologyGraph& g = graphs[gi];
    for (std::size_t size : sizes) {
      const std::uint64_t point = (std::uint64_t{gi} << 32) | size;
      for (const auto& algo : algos) {
        const auto t0 = std::chrono::steady_clock::now();
        auto rs = detail::run_samples(opt.samples, opt.threads, [&](std::size_t i) {
          const std::uint64_t ss = split_seed(opt.seed, point, i);
          std::mt19937_64 rng(ss);
          const GF2Matrix m = to_matrix(sample_walk_circuit(g, size, rng));
          const CnotCircuit c = synthesize_by_name(algo, m, g);
          if (!check_equivalent(m, c)) throw BenchError(algo + " on " + g.name() + ": not equivalent", ss);
          if (!validate_circuit(g, c)) throw BenchError(algo + " on " + g.name() + ": off-graph gate", ss);
          return detail::SampleResult{c.size(), depth(c)};
        });
        out.push_back(detail::summarize(g.name(), algo, size, opt.seed, rs, detail::elapsed_ms(t0)));
      }
    }
  }
  return out;
}

/// Square-grid depth runs. For side w there are n = w^2 data qubits;
/// "grid-depth" runs on an n x n layout (n^2 wires), "rowcol" on the w x w
/// grid itself. Both see the same random invertible matrices.
inline std::vector<BenchRecord> run_depth_experiment(const std::vector<std::size_t>& sides,
                                                     const std::vector<std::string>& algos,
                                                     const BenchOptions& opt) {
  std::vector<BenchRecord> out;
  for (std::size_t side : sides) {
    const std::size_t n = side * side;
    for (const auto& algo : algos) {
      std::string graph_id;
      std::function<CnotCircuit(const GF2Matrix&)> synth;
      std::function<bool(const GF2Matrix&, const CnotCircuit&)> verify;
      if (algo == "grid-depth") {
        const GridLayout layout = make_grid_layout(n, n, n);
        const TopologyGraph g = layout.graph();
        graph_id = g.name();
        synth = [layout](const GF2Matrix& m) { return synthesize_grid_depth(m, layout); };
        verify = [layout, g](const GF2Matrix& m, const CnotCircuit& c) {
          return check_equivalent(m, c, layout.data_wires()) && validate_circuit(g, c);
        };
      } else {
        TopologyGraph g = grid_graph({side, side});
        graph_id = g.name();
        synth = [algo, g](const GF2Matrix& m) { return synthesize_by_name(algo, m, g); };
        verify = [g](const GF2Matrix& m, const CnotCircuit& c) {
          return check_equivalent(m, c) && validate_circuit(g, c);
        };
      }
      const auto t0 = std::chrono::steady_clock::now();
      auto rs = detail::run_samples(opt.samples, opt.threads, [&](std::size_t i) {
        const std::uint64_t ss = split_seed(opt.seed, n, i);
        std::mt19937_64 rng(ss);
        const GF2Matrix m = random_invertible(n, rng);
        const CnotCircuit c = synth(m);
        if (!verify(m, c)) throw BenchError(algo + " on " + graph_id + ": verification failed", ss);
        return detail::SampleResult{c.size(), depth(c)};
      });
      out.push_back(detail::summarize(graph_id, algo, n, opt.seed, rs, detail::elapsed_ms(t0)));
    }
  }
  return out;
}

inline void write_bench_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
  os << "graph,algo,input_size,samples,mean_size,mean_depth,seed\n";
  for (const auto& r : records) {
    std::ostringstream line;
    line << r.graph << ',' << r.algo << ',' << r.input << ',' << r.samples << ',' << std::fixed
         << std::setprecision(3) << r.mean_size << ',' << r.mean_depth << ',' << r.seed << '\n';
    os << line.str();
  }
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope needs two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace cnotsynth
