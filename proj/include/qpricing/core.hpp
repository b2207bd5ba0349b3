#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qpricing/error.hpp"
#include "qpricing/flow.hpp"

namespace qpricing {

/// Index of an explicitly priced base query; valid values are [0, Instance::m).
using BaseQueryId = int;

/// Absolute tolerance on money comparisons (buy decisions, dominance checks);
/// absorbs LP and flow round-off.
inline constexpr double kMoneyEps = 1e-7;

/// A buyer whose demanded query is determined by any one of these sets of
/// base queries. Kept normalized: each set sorted, duplicates removed, strict
/// supersets of other sets dropped (they never price cheaper at nonnegative
/// prices), list ordered by (size, lexicographic). Empty sets and
/// out-of-range ids survive normalization so validate_instance can report
/// them.
struct ExplicitDemand {
  std::vector<std::vector<BaseQueryId>> support_sets;
};

struct CutEdge {
  int from = 0;
  int to = 0;
  std::optional<BaseQueryId> base_query;  // empty => infinite capacity
};

/// A buyer whose support sets are the label sets of the finite s-t cuts of
/// this graph. Each base query labels at most one edge per buyer, so a cut's
/// capacity equals the price sum of its labels.
struct CutGraphDemand {
  int node_count = 0;
  int source = 0;
  int sink = 0;
  std::vector<CutEdge> edges;
};

using Demand = std::variant<ExplicitDemand, CutGraphDemand>;

inline std::vector<std::vector<BaseQueryId>> normalize_support_sets(
    std::vector<std::vector<BaseQueryId>> sets) {
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  auto size_lex = [](const std::vector<BaseQueryId>& a, const std::vector<BaseQueryId>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  };
  std::sort(sets.begin(), sets.end(), size_lex);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<std::vector<BaseQueryId>> kept;
  for (auto& s : sets) {
    bool dominated = false;
    for (const auto& t : kept) {
      if (!t.empty() && t.size() < s.size() &&
          std::includes(s.begin(), s.end(), t.begin(), t.end())) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(std::move(s));
  }
  return kept;
}

inline Demand normalize_demand(Demand d) {
  if (auto* ex = std::get_if<ExplicitDemand>(&d))
    ex->support_sets = normalize_support_sets(std::move(ex->support_sets));
  return d;
}

struct Buyer {
  double value = 0.0;
  Demand demand;

  Buyer(double v, Demand d) : value(v), demand(normalize_demand(std::move(d))) {}
};

/// A complete pricing problem: m explicitly priced base queries and the
/// representative buyer load. Immutable after construction.
struct Instance {
  int m = 1;
  std::vector<Buyer> buyers;
  double value_bound = 0.0;  // largest buyer value; 0 when there are no buyers

  Instance(int m_, std::vector<Buyer> buyers_) : m(m_), buyers(std::move(buyers_)) {
    for (const Buyer& b : buyers)
      if (b.value > value_bound) value_bound = b.value;
  }

  int buyer_count() const { return static_cast<int>(buyers.size()); }

  /// Price for base queries no scheme wants to sell: strictly above every
  /// buyer value, so no buyer can afford any set containing one.
  double sentinel_price() const { return value_bound + 1.0; }
};

/// Input prices p_B on the m base queries.
struct PriceVector {
  std::vector<double> prices;

  PriceVector() = default;
  explicit PriceVector(std::vector<double> p) : prices(std::move(p)) {}

  static PriceVector uniform(int m, double price) {
    return PriceVector(std::vector<double>(static_cast<size_t>(m), price));
  }
  static PriceVector all_sentinel(const Instance& inst) {
    return uniform(inst.m, inst.sentinel_price());
  }
  static PriceVector all_ones(int m) { return uniform(m, 1.0); }

  double operator[](BaseQueryId b) const { return prices[static_cast<size_t>(b)]; }
  int size() const { return static_cast<int>(prices.size()); }
};

inline void check_prices(const Instance& inst, const PriceVector& prices) {
  if (prices.size() != inst.m)
    throw ValidationError("price vector has " + std::to_string(prices.size()) +
                          " entries, instance has m=" + std::to_string(inst.m));
  for (double p : prices.prices)
    if (!std::isfinite(p) || p < 0.0)
      throw ValidationError("prices must be finite and nonnegative");
}

/// Flow network realizing a cut-graph demand under the given prices: the
/// edge labeled b gets capacity prices[b], unlabeled edges are infinite.
inline FlowNetwork demand_network(const CutGraphDemand& g, const PriceVector& prices) {
  FlowNetwork net;
  net.node_count = g.node_count;
  net.source = g.source;
  net.sink = g.sink;
  net.arcs.reserve(g.edges.size());
  for (const CutEdge& e : g.edges) {
    Capacity cap = e.base_query ? Capacity::finite(prices[*e.base_query]) : Capacity::unbounded();
    net.arcs.push_back({e.from, e.to, cap});
  }
  return net;
}

namespace detail {

inline void validate_cut_graph(const CutGraphDemand& g, int m, const std::string& who,
                               std::vector<std::string>& out) {
  bool structure_ok = true;
  if (g.node_count < 2) {
    out.push_back(who + ": cut graph needs at least two nodes");
    structure_ok = false;
  }
  auto node_ok = [&](int v) { return v >= 0 && v < g.node_count; };
  if (!node_ok(g.source) || !node_ok(g.sink)) {
    out.push_back(who + ": cut graph source/sink out of range");
    structure_ok = false;
  } else if (g.source == g.sink) {
    out.push_back(who + ": cut graph source equals sink");
    structure_ok = false;
  }
  std::vector<BaseQueryId> labels;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    const CutEdge& edge = g.edges[e];
    if (!node_ok(edge.from) || !node_ok(edge.to)) {
      out.push_back(who + ": edge " + std::to_string(e) + " endpoint out of range");
      structure_ok = false;
    }
    if (edge.base_query) {
      if (*edge.base_query < 0 || *edge.base_query >= m) {
        out.push_back(who + ": edge " + std::to_string(e) + " base query index out of range");
        structure_ok = false;
      } else {
        labels.push_back(*edge.base_query);
      }
    }
  }
  std::sort(labels.begin(), labels.end());
  for (size_t i = 1; i < labels.size(); ++i)
    if (labels[i] == labels[i - 1] && (i == 1 || labels[i] != labels[i - 2]))
      out.push_back(who + ": base query " + std::to_string(labels[i]) +
                    " labels more than one edge");
  if (structure_ok) {
    FlowNetwork unit = demand_network(g, PriceVector::all_ones(m));
    if (!has_finite_cut(unit))
      out.push_back(who + ": no finite s-t cut (demand undeterminable)");
  }
}

}  // namespace detail

/// Every invariant violation in the instance, in deterministic order
/// (instance-level checks first, then buyers in order). Empty means valid.
inline std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> out;
  if (inst.m < 1) out.push_back("instance: m must be at least 1");
  for (int i = 0; i < inst.buyer_count(); ++i) {
    const Buyer& buyer = inst.buyers[static_cast<size_t>(i)];
    std::string who = "buyer " + std::to_string(i);
    if (!std::isfinite(buyer.value) || buyer.value < 0.0)
      out.push_back(who + ": value must be finite and nonnegative");
    if (const auto* ex = std::get_if<ExplicitDemand>(&buyer.demand)) {
      if (ex->support_sets.empty()) out.push_back(who + ": demand has no support sets");
      for (size_t s = 0; s < ex->support_sets.size(); ++s) {
        const auto& set = ex->support_sets[s];
        if (set.empty()) out.push_back(who + ": support set " + std::to_string(s) + " is empty");
        for (BaseQueryId b : set)
          if (b < 0 || b >= inst.m)
            out.push_back(who + ": base query index " + std::to_string(b) + " out of range");
      }
    } else {
      detail::validate_cut_graph(std::get<CutGraphDemand>(buyer.demand), inst.m, who, out);
    }
  }
  return out;
}

inline void require_valid(const Instance& inst) {
  std::vector<std::string> violations = validate_instance(inst);
  if (!violations.empty()) {
    std::string msg = "invalid instance:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw ValidationError(msg);
  }
}

/// True when every buyer has an explicit demand with exactly one support set.
inline bool is_single_minded(const Instance& inst) {
  for (const Buyer& b : inst.buyers) {
    const auto* ex = std::get_if<ExplicitDemand>(&b.demand);
    if (!ex || ex->support_sets.size() != 1) return false;
  }
  return true;
}

}  // namespace qpricing
