#pragma once

#include <algorithm>
#include <vector>

#include "qpricing/core.hpp"
#include "qpricing/flow.hpp"

namespace qpricing {

/// Fundamental price of a demanded query under given base query prices:
/// the cheapest support set and its total price.
struct QuoteResult {
  double price = 0.0;
  std::vector<BaseQueryId> minimizer;  // sorted ascending
};

namespace detail {

inline QuoteResult quote_explicit(const ExplicitDemand& demand, const PriceVector& prices) {
  if (demand.support_sets.empty())
    throw ValidationError("demand has no support sets");
  QuoteResult best;
  bool have = false;
  // Normalized (size, lex) order; the first set reaching the minimum wins,
  // which pins the minimizer whenever prices tie.
  for (const auto& set : demand.support_sets) {
    double total = 0.0;
    for (BaseQueryId b : set) total += prices[b];
    if (!have || total < best.price) {
      best.price = total;
      best.minimizer = set;
      have = true;
    }
  }
  return best;
}

inline QuoteResult quote_cut_graph(const CutGraphDemand& demand, const PriceVector& prices) {
  FlowNetwork net = demand_network(demand, prices);
  CutResult cut = min_cut(net);
  if (!cut.value)
    throw UndeterminableDemandError("cut graph has no finite s-t cut");
  QuoteResult result;
  for (int arc : cut.cut_arcs) {
    const CutEdge& e = demand.edges[static_cast<size_t>(arc)];
    result.minimizer.push_back(*e.base_query);  // finite arcs are always labeled
  }
  std::sort(result.minimizer.begin(), result.minimizer.end());
  for (BaseQueryId b : result.minimizer) result.price += prices[b];
  return result;
}

}  // namespace detail

/// The minimum over the demand's support sets of the summed prices, plus one
/// minimizing set. Ties are broken deterministically: first set in normalized
/// (size, lexicographic) order for explicit demands, the canonical
/// residual-reachability cut for cut graphs.
inline QuoteResult quote(const Demand& demand, const PriceVector& prices) {
  if (const auto* ex = std::get_if<ExplicitDemand>(&demand))
    return detail::quote_explicit(*ex, prices);
  return detail::quote_cut_graph(std::get<CutGraphDemand>(demand), prices);
}

struct MinSupport {
  int size = 0;
  std::vector<BaseQueryId> set;
};

namespace detail {

inline int max_base_query(const Demand& demand) {
  int top = -1;
  if (const auto* ex = std::get_if<ExplicitDemand>(&demand)) {
    for (const auto& s : ex->support_sets)
      for (BaseQueryId b : s) top = std::max(top, b);
  } else {
    for (const CutEdge& e : std::get<CutGraphDemand>(demand).edges)
      if (e.base_query) top = std::max(top, *e.base_query);
  }
  return top;
}

}  // namespace detail

/// Canonical minimum-cardinality support set: place a price of 1 on every
/// base query and invoke the oracle, inheriting its tie-break.
inline MinSupport min_support_size(const Demand& demand) {
  PriceVector ones = PriceVector::all_ones(detail::max_base_query(demand) + 1);
  QuoteResult q = quote(demand, ones);
  return {static_cast<int>(q.minimizer.size()), std::move(q.minimizer)};
}

}  // namespace qpricing
