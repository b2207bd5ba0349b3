#pragma once

#include <vector>

#include "qpricing/core.hpp"
#include "qpricing/oracle.hpp"

namespace qpricing {

/// Seller revenue at a price vector: every buyer whose fundamental price is
/// at most their value buys and pays that price.
struct RevenueReport {
  double revenue = 0.0;
  std::vector<int> served;           // ascending buyer indices
  std::vector<QuoteResult> quotes;   // one per buyer
};

inline RevenueReport evaluate_revenue(const Instance& inst, const PriceVector& prices) {
  check_prices(inst, prices);
  RevenueReport report;
  report.quotes.reserve(inst.buyers.size());
  for (int i = 0; i < inst.buyer_count(); ++i) {
    const Buyer& buyer = inst.buyers[static_cast<size_t>(i)];
    QuoteResult q = quote(buyer.demand, prices);
    if (q.price <= buyer.value + kMoneyEps) {
      report.served.push_back(i);
      report.revenue += q.price;
    }
    report.quotes.push_back(std::move(q));
  }
  return report;
}

}  // namespace qpricing
