#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "qpricing/core.hpp"
#include "qpricing/flow.hpp"

namespace qpricing {

/// splitmix64 finalizer; used to derive independent sub-seeds.
inline std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix_seed(seed ^ mix_seed(index));
}

/// Uniform double in [0, 1), bit-identical across platforms.
inline double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform index in [0, k), k > 0 (plain modulo draw).
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t k) {
  return static_cast<std::size_t>(rng() % k);
}

struct GenConfig {
  int n = 0;                  // buyers
  int m = 1;                  // base query pool size
  double value_lo = 0.0;      // values drawn uniform in (value_lo, value_hi]
  double value_hi = 1.0;
  int layers = 1;             // cut instances: arc layers between source and sink
  int width = 1;              // cut instances: nodes per interior column
  double inf_edge_prob = 0.0;
  std::uint64_t seed = 0;
};

inline void check_config(const GenConfig& cfg) {
  if (cfg.n < 0) throw ValidationError("gen config: n must be nonnegative");
  if (cfg.m < 1) throw ValidationError("gen config: m must be at least 1");
  if (!(cfg.value_lo <= cfg.value_hi) || cfg.value_lo < 0.0 || !std::isfinite(cfg.value_hi))
    throw ValidationError("gen config: need 0 <= value_lo <= value_hi < inf");
  if (!(cfg.inf_edge_prob >= 0.0) || cfg.inf_edge_prob >= 1.0)
    throw ValidationError("gen config: inf_edge_prob must be in [0, 1)");
  if (cfg.layers < 1 || cfg.width < 1)
    throw ValidationError("gen config: layers and width must be at least 1");
}

inline double draw_value(std::mt19937_64& rng, const GenConfig& cfg) {
  return cfg.value_hi - unit_double(rng) * (cfg.value_hi - cfg.value_lo);
}

/// Random single-minded instance: each buyer draws t uniform in [1, m], then
/// t base queries with replacement (deduplicated into one support set) and a
/// value uniform in (value_lo, value_hi].
inline Instance gen_single_minded(const GenConfig& cfg) {
  check_config(cfg);
  std::vector<Buyer> buyers;
  buyers.reserve(static_cast<size_t>(cfg.n));
  for (int i = 0; i < cfg.n; ++i) {
    std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    double value = draw_value(rng, cfg);
    std::size_t t = 1 + uniform_index(rng, static_cast<std::size_t>(cfg.m));
    std::vector<BaseQueryId> set;
    set.reserve(t);
    for (std::size_t d = 0; d < t; ++d)
      set.push_back(static_cast<BaseQueryId>(uniform_index(rng, static_cast<std::size_t>(cfg.m))));
    buyers.emplace_back(value, ExplicitDemand{{std::move(set)}});
  }
  return Instance(cfg.m, std::move(buyers));
}

/// Arc count of one buyer's layered cut graph: columns 0..L with W nodes in
/// each interior column and complete bipartite arcs between neighbours.
inline int cut_graph_arc_count(int layers, int width) {
  if (layers == 1) return 1;
  long long arcs = 2LL * width + static_cast<long long>(layers - 2) * width * width;
  if (arcs > 100000000LL)
    throw ValidationError("gen config: layered graph would have " + std::to_string(arcs) +
                          " arcs per buyer");
  return static_cast<int>(arcs);
}

namespace detail {

inline CutGraphDemand layered_graph_shape(int layers, int width) {
  CutGraphDemand g;
  const int interior = (layers - 1) * width;
  g.node_count = interior + 2;
  g.source = 0;
  g.sink = interior + 1;
  auto column = [&](int c) {
    std::vector<int> nodes;
    if (c == 0) {
      nodes.push_back(g.source);
    } else if (c == layers) {
      nodes.push_back(g.sink);
    } else {
      for (int w = 0; w < width; ++w) nodes.push_back(1 + (c - 1) * width + w);
    }
    return nodes;
  };
  for (int c = 0; c < layers; ++c) {
    for (int from : column(c))
      for (int to : column(c + 1)) g.edges.push_back({from, to, std::nullopt});
  }
  return g;
}

}  // namespace detail

/// Random cut-graph instance: one layered DAG per buyer, each arc either
/// flipped to infinite capacity with probability inf_edge_prob or labeled by
/// a base query drawn without replacement from the pool. Regenerates until
/// the graph has a finite s-t cut.
inline Instance gen_cut_instance(const GenConfig& cfg) {
  check_config(cfg);
  const int arcs = cut_graph_arc_count(cfg.layers, cfg.width);
  if (cfg.m < arcs)
    throw ValidationError("gen config: pool m=" + std::to_string(cfg.m) + " smaller than the " +
                          std::to_string(arcs) + " arcs of each buyer's graph");
  std::vector<Buyer> buyers;
  buyers.reserve(static_cast<size_t>(cfg.n));
  std::vector<BaseQueryId> pool(static_cast<size_t>(cfg.m));
  for (int i = 0; i < cfg.n; ++i) {
    std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    double value = draw_value(rng, cfg);
    CutGraphDemand graph;
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 1000)
        throw ValidationError("gen config: could not draw a buyer graph with a finite cut");
      graph = detail::layered_graph_shape(cfg.layers, cfg.width);
      std::vector<size_t> finite_arcs;
      for (size_t e = 0; e < graph.edges.size(); ++e)
        if (!(unit_double(rng) < cfg.inf_edge_prob)) finite_arcs.push_back(e);
      std::iota(pool.begin(), pool.end(), 0);
      for (size_t d = 0; d < finite_arcs.size(); ++d) {
        std::size_t pickIdx = d + uniform_index(rng, pool.size() - d);
        std::swap(pool[d], pool[pickIdx]);
        graph.edges[finite_arcs[d]].base_query = pool[d];
      }
      if (has_finite_cut(demand_network(graph, PriceVector::all_ones(cfg.m)))) break;
    }
    buyers.emplace_back(value, std::move(graph));
  }
  return Instance(cfg.m, std::move(buyers));
}

/// Subset-sum hardness gadget: per integer a_j an item j and two buyers with
/// values a_j and 2*a_j wanting {j}, plus one buyer valuing all items at
/// B + sum(a). The optimal revenue is B + 3*sum(a) exactly when some subset
/// of a sums to B.
inline Instance gen_subset_sum_gadget(const std::vector<long long>& a, long long budget) {
  if (a.empty()) throw ValidationError("subset-sum gadget: a must be nonempty");
  for (long long v : a)
    if (v < 1) throw ValidationError("subset-sum gadget: all integers must be positive");
  if (budget < 1) throw ValidationError("subset-sum gadget: B must be positive");
  const int m = static_cast<int>(a.size());
  long long total = 0;
  std::vector<Buyer> buyers;
  std::vector<BaseQueryId> all(static_cast<size_t>(m));
  std::iota(all.begin(), all.end(), 0);
  for (int j = 0; j < m; ++j) {
    total += a[static_cast<size_t>(j)];
    buyers.emplace_back(static_cast<double>(a[static_cast<size_t>(j)]), ExplicitDemand{{{j}}});
    buyers.emplace_back(static_cast<double>(2 * a[static_cast<size_t>(j)]), ExplicitDemand{{{j}}});
  }
  buyers.emplace_back(static_cast<double>(budget + total), ExplicitDemand{{all}});
  return Instance(m, std::move(buyers));
}

}  // namespace qpricing
