#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "qpricing/core.hpp"
#include "qpricing/flow.hpp"

namespace qpricing {

/// Exhaustive minimum cut over all s-t node partitions: the independent
/// cross-check for the flow solver and the cut-graph oracle. Only for small
/// graphs (2^(nodes-2) partitions).
inline std::optional<double> brute_force_min_cut(const FlowNetwork& net) {
  const int n = net.node_count;
  std::vector<int> free_nodes;
  for (int v = 0; v < n; ++v)
    if (v != net.source && v != net.sink) free_nodes.push_back(v);
  std::optional<double> best;
  for (std::uint64_t mask = 0; mask < (1ULL << free_nodes.size()); ++mask) {
    std::vector<char> source_side(static_cast<size_t>(n), 0);
    source_side[static_cast<size_t>(net.source)] = 1;
    for (size_t k = 0; k < free_nodes.size(); ++k)
      if (mask >> k & 1ULL) source_side[static_cast<size_t>(free_nodes[k])] = 1;
    double value = 0.0;
    bool infinite = false;
    for (const Arc& a : net.arcs) {
      if (!source_side[static_cast<size_t>(a.from)] || source_side[static_cast<size_t>(a.to)]) continue;
      if (a.capacity.infinite) {
        infinite = true;
        break;
      }
      value += a.capacity.value;
    }
    if (infinite) continue;
    if (!best || value < *best) best = value;
  }
  return best;
}

/// All support sets of a cut-graph demand, by enumerating the label sets of
/// its finite s-t cuts. The result may contain supersets of other entries;
/// normalization when constructing an ExplicitDemand from it removes them.
inline std::vector<std::vector<BaseQueryId>> enumerate_cut_support_sets(const CutGraphDemand& g) {
  std::vector<int> free_nodes;
  for (int v = 0; v < g.node_count; ++v)
    if (v != g.source && v != g.sink) free_nodes.push_back(v);
  std::vector<std::vector<BaseQueryId>> sets;
  for (std::uint64_t mask = 0; mask < (1ULL << free_nodes.size()); ++mask) {
    std::vector<char> source_side(static_cast<size_t>(g.node_count), 0);
    source_side[static_cast<size_t>(g.source)] = 1;
    for (size_t k = 0; k < free_nodes.size(); ++k)
      if (mask >> k & 1ULL) source_side[static_cast<size_t>(free_nodes[k])] = 1;
    std::vector<BaseQueryId> labels;
    bool infinite = false;
    for (const CutEdge& e : g.edges) {
      if (!source_side[static_cast<size_t>(e.from)] || source_side[static_cast<size_t>(e.to)]) continue;
      if (!e.base_query) {
        infinite = true;
        break;
      }
      labels.push_back(*e.base_query);
    }
    if (infinite) continue;
    std::sort(labels.begin(), labels.end());
    sets.push_back(std::move(labels));
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  return sets;
}

}  // namespace qpricing
