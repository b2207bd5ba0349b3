#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qpricing/core.hpp"
#include "qpricing/lp.hpp"
#include "qpricing/oracle.hpp"
#include "qpricing/revenue.hpp"

namespace qpricing {

/// k-th harmonic number; denominator of the single-price revenue guarantee.
inline double harmonic_number(long long k) {
  double h = 0.0;
  for (long long i = 1; i <= k; ++i) h += 1.0 / static_cast<double>(i);
  return h;
}

/// A buyer scored for the price schemes: the canonical minimum support set,
/// its size, and the buyer's value spread evenly over that set.
struct ScoredBuyer {
  int buyer = 0;
  int support_size = 0;
  std::vector<BaseQueryId> min_support;
  double per_item_value = 0.0;
};

/// Buyers sorted by decreasing per-item value, ties by ascending buyer index.
inline std::vector<ScoredBuyer> score_and_order(const Instance& inst) {
  std::vector<ScoredBuyer> scored;
  scored.reserve(inst.buyers.size());
  for (int i = 0; i < inst.buyer_count(); ++i) {
    MinSupport ms = min_support_size(inst.buyers[static_cast<size_t>(i)].demand);
    if (ms.size < 1)
      throw ValidationError("buyer " + std::to_string(i) + " has an empty support set");
    ScoredBuyer s;
    s.buyer = i;
    s.support_size = ms.size;
    s.min_support = std::move(ms.set);
    s.per_item_value = inst.buyers[static_cast<size_t>(i)].value / s.support_size;
    scored.push_back(std::move(s));
  }
  std::stable_sort(scored.begin(), scored.end(), [](const ScoredBuyer& a, const ScoredBuyer& b) {
    return a.per_item_value > b.per_item_value;
  });
  return scored;
}

/// Halving price grid: the value bound, halved floor(log2(2*n*m)) - 1 times,
/// clamped to at least one entry. Empty when the bound is 0 or there are no
/// buyers.
inline std::vector<double> price_grid(const Instance& inst) {
  double bound = inst.value_bound;
  if (bound <= 0.0 || inst.buyer_count() == 0) return {};
  unsigned long long span =
      2ULL * static_cast<unsigned long long>(inst.buyer_count()) * static_cast<unsigned long long>(inst.m);
  int length = std::bit_width(span) - 1;  // floor(log2(span)); span >= 2
  if (length < 1) length = 1;
  std::vector<double> grid(static_cast<size_t>(length));
  double q = bound;
  for (auto& g : grid) {
    g = q;
    q /= 2.0;
  }
  return grid;
}

/// One uniform price drawn from the halving grid with the seeded PRNG.
/// A zero value bound degenerates to all-zero prices.
inline PriceVector random_single_price(const Instance& inst, std::uint64_t seed) {
  std::vector<double> grid = price_grid(inst);
  if (grid.empty()) return PriceVector::uniform(inst.m, 0.0);
  std::mt19937_64 rng(seed);
  return PriceVector::uniform(inst.m, grid[rng() % grid.size()]);
}

/// Exact expectation of the randomized single-price scheme: average revenue
/// over the whole grid, no sampling.
inline double grid_expected_revenue(const Instance& inst) {
  std::vector<double> grid = price_grid(inst);
  if (grid.empty()) return 0.0;
  double total = 0.0;
  for (double g : grid) total += evaluate_revenue(inst, PriceVector::uniform(inst.m, g)).revenue;
  return total / static_cast<double>(grid.size());
}

/// Deterministic single price: each buyer's per-item value is a candidate
/// uniform price whose revenue has the closed form (per-item value) x
/// (cumulative support size up the ordering); post the best candidate, ties
/// to the earliest.
inline PriceVector deterministic_single_price(const Instance& inst) {
  if (inst.buyer_count() == 0 || inst.value_bound <= 0.0) return PriceVector::all_sentinel(inst);
  std::vector<ScoredBuyer> scored = score_and_order(inst);
  long long cumulative = 0;
  double best = -1.0;
  double best_price = 0.0;
  for (const ScoredBuyer& s : scored) {
    cumulative += s.support_size;
    double closed_form = s.per_item_value * static_cast<double>(cumulative);
    if (closed_form > best) {
      best = closed_form;
      best_price = s.per_item_value;
    }
  }
  return PriceVector::uniform(inst.m, best_price);
}

/// Per-run audit of the conditional fill procedure, recorded for the
/// invariants its dominance proof relies on.
struct FillAudit {
  int prefix_len = 0;
  double per_item_floor = 0.0;     // per-item value of the last prefix buyer; no price goes below it
  double max_per_item_drop = 0.0;  // largest per-item value decrease observed across steps
  double min_finite_price = std::numeric_limits<double>::infinity();
};

struct FillResult {
  PriceVector prices;
  FillAudit audit;
};

/// Mutable state of one fill run over a scored prefix. Residual sets hold
/// only unpriced base queries; a buyer leaves `remaining` when selected, and
/// is skipped once its residual set empties.
struct FillState {
  int step = 0;
  std::vector<char> remaining;                      // by prefix position
  std::vector<double> residual_value;               // buyer values net of overlap charges
  std::vector<std::vector<BaseQueryId>> residual_set;
  double current_price = 0.0;
  int selected = -1;  // prefix position picked this step
};

/// Price-fill conditional on serving a prefix of the ordering: repeatedly pick the
/// surviving buyer with the smallest residual per-item value, price that
/// buyer's unpriced support queries at it, and charge everyone's residuals
/// for the overlap. Queries never priced end at the sentinel.
inline FillResult fill_prices_for_service_set(const Instance& inst,
                                              const std::vector<ScoredBuyer>& scored,
                                              int prefix_len) {
  if (prefix_len < 0 || prefix_len > static_cast<int>(scored.size()))
    throw ValidationError("fill prefix length out of range");
  FillResult out;
  out.audit.prefix_len = prefix_len;
  out.audit.per_item_floor = prefix_len > 0 ? scored[static_cast<size_t>(prefix_len - 1)].per_item_value : 0.0;

  std::vector<double> assigned(static_cast<size_t>(inst.m), -1.0);  // -1 = unpriced
  FillState state;
  state.remaining.assign(static_cast<size_t>(prefix_len), 1);
  state.residual_value.resize(static_cast<size_t>(prefix_len));
  state.residual_set.resize(static_cast<size_t>(prefix_len));
  for (int j = 0; j < prefix_len; ++j) {
    state.residual_value[static_cast<size_t>(j)] =
        inst.buyers[static_cast<size_t>(scored[static_cast<size_t>(j)].buyer)].value;
    state.residual_set[static_cast<size_t>(j)] = scored[static_cast<size_t>(j)].min_support;
  }

  for (;; ++state.step) {
    state.selected = -1;
    for (int j = 0; j < prefix_len; ++j) {
      if (!state.remaining[static_cast<size_t>(j)] || state.residual_set[static_cast<size_t>(j)].empty())
        continue;
      double r = state.residual_value[static_cast<size_t>(j)] /
                 static_cast<double>(state.residual_set[static_cast<size_t>(j)].size());
      if (state.selected < 0 || r < state.current_price) {
        state.selected = j;
        state.current_price = r;
      }
    }
    if (state.selected < 0) break;
    double price = std::max(state.current_price, 0.0);  // clamp float dust from residual updates
    const std::vector<BaseQueryId> sold = state.residual_set[static_cast<size_t>(state.selected)];
    for (BaseQueryId b : sold) assigned[static_cast<size_t>(b)] = price;
    out.audit.min_finite_price = std::min(out.audit.min_finite_price, price);

    for (int j = 0; j < prefix_len; ++j) {
      if (!state.remaining[static_cast<size_t>(j)] || state.residual_set[static_cast<size_t>(j)].empty())
        continue;
      auto& set = state.residual_set[static_cast<size_t>(j)];
      double old_per_item = state.residual_value[static_cast<size_t>(j)] / static_cast<double>(set.size());
      std::vector<BaseQueryId> kept;
      kept.reserve(set.size());
      std::set_difference(set.begin(), set.end(), sold.begin(), sold.end(), std::back_inserter(kept));
      size_t overlap = set.size() - kept.size();
      state.residual_value[static_cast<size_t>(j)] -= static_cast<double>(overlap) * price;
      set = std::move(kept);
      if (j != state.selected && !set.empty()) {
        double new_per_item = state.residual_value[static_cast<size_t>(j)] / static_cast<double>(set.size());
        out.audit.max_per_item_drop =
            std::max(out.audit.max_per_item_drop, old_per_item - new_per_item);
      }
    }
    state.remaining[static_cast<size_t>(state.selected)] = 0;
  }

  std::vector<double> prices(static_cast<size_t>(inst.m));
  double sentinel = inst.sentinel_price();
  for (int b = 0; b < inst.m; ++b)
    prices[static_cast<size_t>(b)] = assigned[static_cast<size_t>(b)] < 0.0 ? sentinel : assigned[static_cast<size_t>(b)];
  out.prices = PriceVector(std::move(prices));
  return out;
}

/// Detailed output of a multi-price scheme. winning_prefix is the length of
/// the served prefix whose prices won (0 for the degenerate all-sentinel
/// result on empty or all-zero-value instances).
struct SchemeResult {
  PriceVector prices;
  double revenue = 0.0;
  int winning_prefix = 0;
  std::vector<ScoredBuyer> order;
  std::vector<FillAudit> audits;  // combinatorial scheme only, one per prefix
};

namespace detail {

// Serve LP restricted to the union of the fixed sets: maximize the summed
// fixed-set prices of the served buyers subject to their value caps. Every
// variable occurs in at least one cap row, so no upper bounds are needed.
inline LpSolution solve_serve_lp(const Instance& inst,
                                 const std::vector<const std::vector<BaseQueryId>*>& fixed_sets,
                                 const std::vector<double>& values,
                                 std::vector<BaseQueryId>& vars_out) {
  std::vector<int> var_of(static_cast<size_t>(inst.m), -1);
  vars_out.clear();
  for (const auto* set : fixed_sets)
    for (BaseQueryId b : *set)
      if (var_of[static_cast<size_t>(b)] < 0) {
        var_of[static_cast<size_t>(b)] = static_cast<int>(vars_out.size());
        vars_out.push_back(b);
      }
  LinearProgram lp;
  lp.num_vars = static_cast<int>(vars_out.size());
  lp.objective.assign(vars_out.size(), 0.0);
  lp.constraints.reserve(fixed_sets.size());
  for (size_t j = 0; j < fixed_sets.size(); ++j) {
    LpConstraint c;
    c.coeffs.assign(vars_out.size(), 0.0);
    for (BaseQueryId b : *fixed_sets[j]) {
      c.coeffs[static_cast<size_t>(var_of[static_cast<size_t>(b)])] = 1.0;
      lp.objective[static_cast<size_t>(var_of[static_cast<size_t>(b)])] += 1.0;
    }
    c.bound = values[j];
    lp.constraints.push_back(std::move(c));
  }
  LpSolution sol = solve(lp);
  if (sol.status != LpStatus::Optimal)
    throw ContractError("serve LP was not optimal; was the instance validated?");
  return sol;
}

}  // namespace detail

/// Multi-price scheme for single-minded buyers: solve the serve LP for each
/// prefix of the pi-ordering and keep the prices with the best evaluated
/// revenue. Queries outside the winning LP are priced at the sentinel.
inline SchemeResult lp_multi_price_single_minded_detailed(const Instance& inst) {
  if (!is_single_minded(inst))
    throw ContractError(
        "lp_multi_price_single_minded requires single-minded buyers; use lp_multi_price_general");
  SchemeResult out;
  out.prices = PriceVector::all_sentinel(inst);
  if (inst.buyer_count() == 0 || inst.value_bound <= 0.0) return out;
  out.order = score_and_order(inst);
  std::vector<const std::vector<BaseQueryId>*> sets;
  std::vector<double> values;
  std::vector<BaseQueryId> vars;
  for (int i = 0; i < inst.buyer_count(); ++i) {
    sets.push_back(&out.order[static_cast<size_t>(i)].min_support);
    values.push_back(inst.buyers[static_cast<size_t>(out.order[static_cast<size_t>(i)].buyer)].value);
    LpSolution sol = detail::solve_serve_lp(inst, sets, values, vars);
    PriceVector prices = PriceVector::all_sentinel(inst);
    for (size_t v = 0; v < vars.size(); ++v) prices.prices[static_cast<size_t>(vars[v])] = sol.x[v];
    double revenue = evaluate_revenue(inst, prices).revenue;
    if (revenue > out.revenue) {
      out.revenue = revenue;
      out.prices = std::move(prices);
      out.winning_prefix = i + 1;
    }
  }
  return out;
}

inline PriceVector lp_multi_price_single_minded(const Instance& inst) {
  return lp_multi_price_single_minded_detailed(inst).prices;
}

/// General multi-price scheme: serve LP per prefix with the minimizer fixed
/// to the canonical minimum support set, envy constraints generated lazily by
/// the quote oracle as the separation routine.
inline SchemeResult lp_multi_price_general_detailed(const Instance& inst) {
  SchemeResult out;
  out.prices = PriceVector::all_sentinel(inst);
  if (inst.buyer_count() == 0 || inst.value_bound <= 0.0) return out;
  out.order = score_and_order(inst);
  const int n = inst.buyer_count();
  const int max_cuts = n * inst.m + 1000;
  for (int i = 1; i <= n; ++i) {
    LinearProgram lp;
    lp.num_vars = inst.m;
    lp.objective.assign(static_cast<size_t>(inst.m), 0.0);
    lp.upper_bounds.assign(static_cast<size_t>(inst.m), inst.value_bound);
    std::vector<char> touched(static_cast<size_t>(inst.m), 0);
    for (int j = 0; j < i; ++j) {
      LpConstraint c;
      c.coeffs.assign(static_cast<size_t>(inst.m), 0.0);
      for (BaseQueryId b : out.order[static_cast<size_t>(j)].min_support) {
        c.coeffs[static_cast<size_t>(b)] = 1.0;
        lp.objective[static_cast<size_t>(b)] += 1.0;
        touched[static_cast<size_t>(b)] = 1;
      }
      c.bound = inst.buyers[static_cast<size_t>(out.order[static_cast<size_t>(j)].buyer)].value;
      lp.constraints.push_back(std::move(c));
    }
    auto separate = [&](const std::vector<double>& x) -> std::optional<LpConstraint> {
      PriceVector prices{x};
      for (int j = 0; j < i; ++j) {
        const auto& fixed_set = out.order[static_cast<size_t>(j)].min_support;
        double fixed_price = 0.0;
        for (BaseQueryId b : fixed_set) fixed_price += x[static_cast<size_t>(b)];
        QuoteResult q = quote(inst.buyers[static_cast<size_t>(out.order[static_cast<size_t>(j)].buyer)].demand, prices);
        if (q.price < fixed_price - kLpTol) {
          LpConstraint cut;
          cut.coeffs.assign(static_cast<size_t>(inst.m), 0.0);
          for (BaseQueryId b : fixed_set) cut.coeffs[static_cast<size_t>(b)] += 1.0;
          for (BaseQueryId b : q.minimizer) {
            cut.coeffs[static_cast<size_t>(b)] -= 1.0;
            touched[static_cast<size_t>(b)] = 1;
          }
          cut.bound = 0.0;
          return cut;
        }
      }
      return std::nullopt;
    };
    LpSolution sol = solve_lazy(lp, separate, max_cuts);
    if (sol.status != LpStatus::Optimal)
      throw ContractError("prefix LP was not optimal; was the instance validated?");
    PriceVector prices = PriceVector::all_sentinel(inst);
    for (int b = 0; b < inst.m; ++b)
      if (touched[static_cast<size_t>(b)]) prices.prices[static_cast<size_t>(b)] = sol.x[static_cast<size_t>(b)];
    double revenue = evaluate_revenue(inst, prices).revenue;
    if (revenue > out.revenue) {
      out.revenue = revenue;
      out.prices = std::move(prices);
      out.winning_prefix = i;
    }
  }
  return out;
}

inline PriceVector lp_multi_price_general(const Instance& inst) {
  return lp_multi_price_general_detailed(inst).prices;
}

/// Combinatorial multi-price scheme: run the fill procedure for every prefix
/// and keep the best evaluated revenue.
inline SchemeResult combinatorial_multi_price_detailed(const Instance& inst) {
  SchemeResult out;
  out.prices = PriceVector::all_sentinel(inst);
  if (inst.buyer_count() == 0 || inst.value_bound <= 0.0) return out;
  out.order = score_and_order(inst);
  for (int i = 1; i <= inst.buyer_count(); ++i) {
    FillResult fill = fill_prices_for_service_set(inst, out.order, i);
    double revenue = evaluate_revenue(inst, fill.prices).revenue;
    out.audits.push_back(fill.audit);
    if (revenue > out.revenue) {
      out.revenue = revenue;
      out.prices = std::move(fill.prices);
      out.winning_prefix = i;
    }
  }
  return out;
}

inline PriceVector combinatorial_multi_price(const Instance& inst) {
  return combinatorial_multi_price_detailed(inst).prices;
}

struct OptimalResult {
  PriceVector prices;
  double revenue = 0.0;
};

/// Exponential baseline for single-minded instances: solve the serve LP for
/// every one of the 2^n service sets and return the best evaluated prices.
/// The result is the true optimum over all price vectors.
inline OptimalResult optimal_exponential_detailed(const Instance& inst, int max_buyers = 16) {
  if (!is_single_minded(inst))
    throw ContractError("optimal_exponential requires a single-minded instance");
  const int n = inst.buyer_count();
  if (n > max_buyers)
    throw ContractError("optimal_exponential: " + std::to_string(n) +
                        " buyers exceed the subset enumeration cap of " + std::to_string(max_buyers));
  OptimalResult out{PriceVector::all_sentinel(inst), 0.0};
  if (n == 0 || inst.value_bound <= 0.0) return out;
  std::vector<BaseQueryId> vars;
  for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
    std::vector<const std::vector<BaseQueryId>*> sets;
    std::vector<double> values;
    for (int i = 0; i < n; ++i) {
      if (!(mask >> i & 1ULL)) continue;
      sets.push_back(&std::get<ExplicitDemand>(inst.buyers[static_cast<size_t>(i)].demand).support_sets[0]);
      values.push_back(inst.buyers[static_cast<size_t>(i)].value);
    }
    LpSolution sol = detail::solve_serve_lp(inst, sets, values, vars);
    PriceVector prices = PriceVector::all_sentinel(inst);
    for (size_t v = 0; v < vars.size(); ++v) prices.prices[static_cast<size_t>(vars[v])] = sol.x[v];
    double revenue = evaluate_revenue(inst, prices).revenue;
    if (revenue > out.revenue) {
      out.revenue = revenue;
      out.prices = std::move(prices);
    }
  }
  return out;
}

inline PriceVector optimal_exponential(const Instance& inst, int max_buyers = 16) {
  return optimal_exponential_detailed(inst, max_buyers).prices;
}

}  // namespace qpricing
