#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "qpricing/error.hpp"

namespace qpricing {

/// Arc capacity: a nonnegative money amount, or infinite. Infinite arcs can
/// carry unbounded flow and never participate in a finite cut; their value is
/// never mixed into capacity sums.
struct Capacity {
  double value = 0.0;
  bool infinite = false;

  static Capacity finite(double v) { return {v, false}; }
  static Capacity unbounded() { return {0.0, true}; }
};

struct Arc {
  int from = 0;
  int to = 0;
  Capacity capacity;
};

/// Directed s-t network. Parallel arcs and self-loops are allowed (self-loops
/// simply never carry useful flow).
struct FlowNetwork {
  int node_count = 0;
  int source = 0;
  int sink = 0;
  std::vector<Arc> arcs;
};

/// Minimum cut. `value` is empty when every s-t cut crosses an infinite arc,
/// in which case `cut_arcs` is empty as well. Otherwise `cut_arcs` lists the
/// arcs of the canonical minimum cut (source-reachable side of the final
/// residual graph) and `value` is the sum of their capacities.
struct CutResult {
  std::optional<double> value;
  std::vector<int> cut_arcs;
};

namespace detail {

inline void check_network(const FlowNetwork& net) {
  if (net.node_count < 2) throw ValidationError("flow network needs at least two nodes");
  auto ok = [&](int v) { return v >= 0 && v < net.node_count; };
  if (!ok(net.source) || !ok(net.sink)) throw ValidationError("flow network source/sink out of range");
  if (net.source == net.sink) throw ValidationError("flow network source equals sink");
  for (const Arc& a : net.arcs) {
    if (!ok(a.from) || !ok(a.to)) throw ValidationError("flow arc endpoint out of range");
    if (!a.capacity.infinite && !(a.capacity.value >= 0.0))
      throw ValidationError("flow arc capacity must be nonnegative");
  }
}

// True iff the sink is reachable from the source using infinite arcs only,
// i.e. every s-t cut crosses an infinite arc and the max flow is unbounded.
inline bool infinite_path_exists(const FlowNetwork& net) {
  std::vector<char> seen(static_cast<size_t>(net.node_count), 0);
  std::vector<int> stack{net.source};
  seen[static_cast<size_t>(net.source)] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (v == net.sink) return true;
    for (const Arc& a : net.arcs) {
      if (a.from == v && a.capacity.infinite && !seen[static_cast<size_t>(a.to)]) {
        seen[static_cast<size_t>(a.to)] = 1;
        stack.push_back(a.to);
      }
    }
  }
  return false;
}

// Dinic with real-valued capacities. Residual traversability is tested
// against exact zero: the bottleneck subtraction zeroes at least one finite
// arc per augmentation, so each blocking-flow phase terminates after at most
// |E| augmenting paths and the phase count is bounded by |V|.
class Dinic {
 public:
  explicit Dinic(const FlowNetwork& net) : n_(net.node_count), source_(net.source), sink_(net.sink) {
    head_.assign(static_cast<size_t>(n_), std::vector<int>{});
    arcs_.reserve(net.arcs.size() * 2);
    for (int i = 0; i < static_cast<int>(net.arcs.size()); ++i) {
      const Arc& a = net.arcs[i];
      head_[static_cast<size_t>(a.from)].push_back(static_cast<int>(arcs_.size()));
      arcs_.push_back({a.to, a.capacity.value, a.capacity.infinite, i});
      head_[static_cast<size_t>(a.to)].push_back(static_cast<int>(arcs_.size()));
      arcs_.push_back({a.from, 0.0, false, -1});
    }
  }

  double run() {
    double total = 0.0;
    while (build_levels()) {
      iter_.assign(static_cast<size_t>(n_), 0);
      for (;;) {
        double pushed = augment(source_, kUnlimited);
        if (pushed <= 0.0) break;
        total += pushed;
      }
    }
    return total;
  }

  // Source side of the canonical cut; valid after run().
  std::vector<char> source_side() const {
    std::vector<char> seen(static_cast<size_t>(n_), 0);
    std::vector<int> stack{source_};
    seen[static_cast<size_t>(source_)] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int id : head_[static_cast<size_t>(v)]) {
        const ResArc& a = arcs_[static_cast<size_t>(id)];
        if (passable(a) && !seen[static_cast<size_t>(a.to)]) {
          seen[static_cast<size_t>(a.to)] = 1;
          stack.push_back(a.to);
        }
      }
    }
    return seen;
  }

 private:
  struct ResArc {
    int to;
    double cap;
    bool infinite;
    int orig;  // original arc index, -1 for reverse arcs
  };

  static constexpr double kUnlimited = -1.0;  // sentinel for "no bottleneck yet"

  static bool passable(const ResArc& a) { return a.infinite || a.cap > 0.0; }

  bool build_levels() {
    level_.assign(static_cast<size_t>(n_), -1);
    level_[static_cast<size_t>(source_)] = 0;
    std::vector<int> queue{source_};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      for (int id : head_[static_cast<size_t>(v)]) {
        const ResArc& a = arcs_[static_cast<size_t>(id)];
        if (passable(a) && level_[static_cast<size_t>(a.to)] < 0) {
          level_[static_cast<size_t>(a.to)] = level_[static_cast<size_t>(v)] + 1;
          queue.push_back(a.to);
        }
      }
    }
    return level_[static_cast<size_t>(sink_)] >= 0;
  }

  // DFS along the level graph; `limit` is the path bottleneck so far
  // (kUnlimited before the first finite arc — an all-infinite s-t path is
  // excluded by the caller's up-front reachability check).
  double augment(int v, double limit) {
    if (v == sink_) return limit;
    for (int& i = iter_[static_cast<size_t>(v)]; i < static_cast<int>(head_[static_cast<size_t>(v)].size()); ++i) {
      int id = head_[static_cast<size_t>(v)][static_cast<size_t>(i)];
      ResArc& a = arcs_[static_cast<size_t>(id)];
      if (!passable(a) || level_[static_cast<size_t>(a.to)] != level_[static_cast<size_t>(v)] + 1) continue;
      double next = limit;
      if (!a.infinite) next = (limit == kUnlimited) ? a.cap : std::min(limit, a.cap);
      double pushed = augment(a.to, next);
      if (pushed > 0.0) {
        if (!a.infinite) a.cap -= pushed;
        arcs_[static_cast<size_t>(id ^ 1)].cap += pushed;
        return pushed;
      }
    }
    level_[static_cast<size_t>(v)] = -1;
    return 0.0;
  }

  int n_;
  int source_;
  int sink_;
  std::vector<std::vector<int>> head_;
  std::vector<ResArc> arcs_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace detail

/// True iff the network admits a finite s-t cut.
inline bool has_finite_cut(const FlowNetwork& net) {
  detail::check_network(net);
  return !detail::infinite_path_exists(net);
}

/// Maximum s-t flow value; empty optional when the flow is unbounded (every
/// cut crosses an infinite arc).
inline std::optional<double> max_flow(const FlowNetwork& net) {
  detail::check_network(net);
  if (detail::infinite_path_exists(net)) return std::nullopt;
  detail::Dinic dinic(net);
  return dinic.run();
}

/// Canonical minimum cut: the arcs leaving the residual-source-reachable node
/// set after a maximum flow. Deterministic for a fixed network.
inline CutResult min_cut(const FlowNetwork& net) {
  detail::check_network(net);
  if (detail::infinite_path_exists(net)) return {std::nullopt, {}};
  detail::Dinic dinic(net);
  dinic.run();
  std::vector<char> side = dinic.source_side();
  CutResult result;
  double value = 0.0;
  for (int i = 0; i < static_cast<int>(net.arcs.size()); ++i) {
    const Arc& a = net.arcs[i];
    if (side[static_cast<size_t>(a.from)] && !side[static_cast<size_t>(a.to)]) {
      result.cut_arcs.push_back(i);
      value += a.capacity.value;  // never infinite: infinite arcs stay passable
    }
  }
  result.value = value;
  return result;
}

}  // namespace qpricing
