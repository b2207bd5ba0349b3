#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qpricing/core.hpp"
#include "qpricing/gen.hpp"
#include "qpricing/revenue.hpp"
#include "qpricing/schemes.hpp"

namespace qpricing {

inline std::string format_money(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct SchemeRun {
  PriceVector prices;
  RevenueReport report;
  double wall_ms = 0.0;
};

/// Run one pricing scheme by CLI name and evaluate its revenue. `seed` only
/// matters for rand-single.
inline SchemeRun run_scheme(const Instance& inst, const std::string& scheme, std::uint64_t seed,
                            int optimal_cap = 16) {
  SchemeRun out;
  auto start = std::chrono::steady_clock::now();
  if (scheme == "rand-single") {
    out.prices = random_single_price(inst, seed);
  } else if (scheme == "det-single") {
    out.prices = deterministic_single_price(inst);
  } else if (scheme == "lp-multi") {
    out.prices = is_single_minded(inst) ? lp_multi_price_single_minded(inst)
                                        : lp_multi_price_general(inst);
  } else if (scheme == "comb-multi") {
    out.prices = combinatorial_multi_price(inst);
  } else if (scheme == "optimal") {
    out.prices = optimal_exponential(inst, optimal_cap);
  } else {
    throw ValidationError("unknown scheme: " + scheme);
  }
  out.report = evaluate_revenue(inst, out.prices);
  out.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

struct ResultRow {
  std::string instance_id;
  std::string generator;
  int n = 0;
  int m = 0;
  int layers = 0;
  int width = 0;
  double inf_edge_prob = 0.0;
  int trial = 0;
  std::string scheme;
  double revenue = 0.0;
  int served_count = 0;
  double wall_ms = 0.0;
  std::uint64_t seed = 0;
};

/// Benchmark sweep: one generator, one swept parameter, trials per point.
struct BenchConfig {
  std::string generator = "single-minded";  // "single-minded" | "cut"
  int n = 20;
  double value_lo = 0.0;
  double value_hi = 1.0;
  std::string sweep_param = "m";  // "m" | "layers"
  std::vector<int> sweep_values;
  int m = 0;  // cut sweeps: fixed pool size, 0 = auto (per-buyer arc count)
  int layers = 1;
  int width = 2;
  double inf_edge_prob = 0.0;
  int trials = 100;
  std::vector<std::string> schemes = {"det-single", "lp-multi", "comb-multi"};
  std::string baseline = "det-single";
  std::uint64_t seed = 1;
  bool timing = true;  // false zeroes wall_ms for byte-identical CSV output
  int threads = 0;     // 0 = hardware concurrency
  int optimal_cap = 16;
  std::string output = "results.csv";
};

inline void check_bench_config(const BenchConfig& cfg) {
  if (cfg.generator != "single-minded" && cfg.generator != "cut")
    throw ValidationError("bench config: generator must be single-minded or cut");
  if (cfg.sweep_param != "m" && cfg.sweep_param != "layers")
    throw ValidationError("bench config: sweep_param must be m or layers");
  if (cfg.sweep_values.empty()) throw ValidationError("bench config: sweep is empty");
  if (cfg.trials < 1) throw ValidationError("bench config: trials must be at least 1");
  if (cfg.schemes.empty()) throw ValidationError("bench config: no schemes selected");
  if (cfg.sweep_param == "layers" && cfg.generator != "cut")
    throw ValidationError("bench config: layers sweep requires the cut generator");
}

inline BenchConfig bench_config_from_json(const nlohmann::json& j) {
  BenchConfig cfg;
  try {
    cfg.generator = j.value("generator", cfg.generator);
    cfg.n = j.value("n", cfg.n);
    cfg.value_lo = j.value("value_lo", cfg.value_lo);
    cfg.value_hi = j.value("value_hi", cfg.value_hi);
    cfg.sweep_param = j.value("sweep_param", cfg.sweep_param);
    cfg.sweep_values = j.value("sweep_values", cfg.sweep_values);
    cfg.m = j.value("m", cfg.m);
    cfg.layers = j.value("layers", cfg.layers);
    cfg.width = j.value("width", cfg.width);
    cfg.inf_edge_prob = j.value("inf_edge_prob", cfg.inf_edge_prob);
    cfg.trials = j.value("trials", cfg.trials);
    cfg.schemes = j.value("schemes", cfg.schemes);
    cfg.baseline = j.value("baseline", cfg.baseline);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.timing = j.value("timing", cfg.timing);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.optimal_cap = j.value("optimal_cap", cfg.optimal_cap);
    cfg.output = j.value("output", cfg.output);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed bench config: ") + e.what());
  }
  check_bench_config(cfg);
  return cfg;
}

/// Generator config for one (point, trial) cell; the trial seed is derived
/// deterministically from the base seed.
inline GenConfig bench_point_config(const BenchConfig& cfg, int point, int trial) {
  GenConfig g;
  g.n = cfg.n;
  g.value_lo = cfg.value_lo;
  g.value_hi = cfg.value_hi;
  g.width = cfg.width;
  g.inf_edge_prob = cfg.inf_edge_prob;
  int swept = cfg.sweep_values[static_cast<size_t>(point)];
  if (cfg.sweep_param == "m") {
    g.m = swept;
    g.layers = cfg.layers;
  } else {
    g.layers = swept;
    g.m = cfg.m > 0 ? cfg.m : cut_graph_arc_count(swept, cfg.width);
  }
  g.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(point) * 1000003ULL +
                                     static_cast<std::uint64_t>(trial));
  return g;
}

/// Run `jobs` calls of fn(job) on a small worker pool; fn must only touch
/// job-owned state so results are identical regardless of scheduling. The
/// first exception thrown by a worker is rethrown on the calling thread.
inline void parallel_for(int jobs, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  threads = std::min(threads, jobs);
  if (threads <= 1) {
    for (int j = 0; j < jobs; ++j) fn(j);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        int j = next.fetch_add(1);
        if (j >= jobs) return;
        try {
          fn(j);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
          next.store(jobs);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// All bench rows in deterministic (point, trial, scheme) order; trials may
/// execute in parallel, each writing into its preassigned slots.
inline std::vector<ResultRow> run_bench(const BenchConfig& cfg) {
  check_bench_config(cfg);
  const int points = static_cast<int>(cfg.sweep_values.size());
  const int schemes = static_cast<int>(cfg.schemes.size());
  for (int p = 0; p < points; ++p) {
    GenConfig g = bench_point_config(cfg, p, 0);
    check_config(g);
    if (cfg.generator == "cut" && g.m < cut_graph_arc_count(g.layers, g.width))
      throw ValidationError("bench config: pool m=" + std::to_string(g.m) +
                            " smaller than the per-buyer arc count at " + cfg.sweep_param + "=" +
                            std::to_string(cfg.sweep_values[static_cast<size_t>(p)]));
  }
  std::vector<ResultRow> rows(static_cast<size_t>(points) * cfg.trials * schemes);
  parallel_for(points * cfg.trials, cfg.threads, [&](int job) {
    const int point = job / cfg.trials;
    const int trial = job % cfg.trials;
    GenConfig g = bench_point_config(cfg, point, trial);
    Instance inst = cfg.generator == "cut" ? gen_cut_instance(g) : gen_single_minded(g);
    std::string id = cfg.generator + "-" + cfg.sweep_param +
                     std::to_string(cfg.sweep_values[static_cast<size_t>(point)]) + "-t" +
                     std::to_string(trial);
    for (int s = 0; s < schemes; ++s) {
      SchemeRun run = run_scheme(inst, cfg.schemes[static_cast<size_t>(s)], g.seed, cfg.optimal_cap);
      ResultRow& row = rows[static_cast<size_t>(job) * schemes + s];
      row.instance_id = id;
      row.generator = cfg.generator;
      row.n = g.n;
      row.m = g.m;
      row.layers = cfg.generator == "cut" ? g.layers : 0;
      row.width = cfg.generator == "cut" ? g.width : 0;
      row.inf_edge_prob = cfg.generator == "cut" ? g.inf_edge_prob : 0.0;
      row.trial = trial;
      row.scheme = cfg.schemes[static_cast<size_t>(s)];
      row.revenue = run.report.revenue;
      row.served_count = static_cast<int>(run.report.served.size());
      row.wall_ms = run.wall_ms;
      row.seed = g.seed;
    }
  });
  return rows;
}

inline constexpr const char* kCsvHeader =
    "instance_id,generator,n,m,layers,width,inf_edge_prob,trial,scheme,revenue,served_count,"
    "wall_ms,seed";

/// CSV schema v1. With timing disabled the wall_ms column is written as 0 and
/// the output is byte-identical across reruns of the same config and seed.
inline void write_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool timing) {
  out << kCsvHeader << "\n";
  char buf[64];
  for (const ResultRow& row : rows) {
    out << row.instance_id << ',' << row.generator << ',' << row.n << ',' << row.m << ','
        << row.layers << ',' << row.width << ',' << format_money(row.inf_edge_prob) << ','
        << row.trial << ',' << row.scheme << ',' << format_money(row.revenue) << ','
        << row.served_count << ',';
    if (timing) {
      std::snprintf(buf, sizeof(buf), "%.3f", row.wall_ms);
      out << buf;
    } else {
      out << 0;
    }
    out << ',' << row.seed << "\n";
  }
}

struct PointSummary {
  int sweep_value = 0;
  std::vector<double> mean_revenue;       // per scheme, cfg order
  std::vector<double> mean_ratio;         // per scheme vs baseline; -1 if undefined
};

/// Arithmetic mean of per-instance revenues and of per-instance revenue
/// ratios against the baseline scheme, per sweep point.
inline std::vector<PointSummary> summarize_bench(const BenchConfig& cfg,
                                                 const std::vector<ResultRow>& rows) {
  const int points = static_cast<int>(cfg.sweep_values.size());
  const int schemes = static_cast<int>(cfg.schemes.size());
  int baseline = -1;
  for (int s = 0; s < schemes; ++s)
    if (cfg.schemes[static_cast<size_t>(s)] == cfg.baseline) baseline = s;
  std::vector<PointSummary> out(static_cast<size_t>(points));
  for (int p = 0; p < points; ++p) {
    PointSummary& summary = out[static_cast<size_t>(p)];
    summary.sweep_value = cfg.sweep_values[static_cast<size_t>(p)];
    summary.mean_revenue.assign(static_cast<size_t>(schemes), 0.0);
    summary.mean_ratio.assign(static_cast<size_t>(schemes), -1.0);
    std::vector<double> ratio_sum(static_cast<size_t>(schemes), 0.0);
    int ratio_count = 0;
    for (int trial = 0; trial < cfg.trials; ++trial) {
      size_t base = (static_cast<size_t>(p) * cfg.trials + trial) * schemes;
      double denom = baseline >= 0 ? rows[base + static_cast<size_t>(baseline)].revenue : 0.0;
      bool usable = denom > 0.0;
      if (usable) ++ratio_count;
      for (int s = 0; s < schemes; ++s) {
        summary.mean_revenue[static_cast<size_t>(s)] += rows[base + static_cast<size_t>(s)].revenue;
        if (usable) ratio_sum[static_cast<size_t>(s)] += rows[base + static_cast<size_t>(s)].revenue / denom;
      }
    }
    for (int s = 0; s < schemes; ++s) {
      summary.mean_revenue[static_cast<size_t>(s)] /= cfg.trials;
      if (baseline >= 0 && ratio_count > 0)
        summary.mean_ratio[static_cast<size_t>(s)] = ratio_sum[static_cast<size_t>(s)] / ratio_count;
    }
  }
  return out;
}

inline void print_summary(std::ostream& out, const BenchConfig& cfg,
                          const std::vector<PointSummary>& summaries) {
  out << "mean revenue per point (trials=" << cfg.trials << ", n=" << cfg.n << ")\n";
  out << cfg.sweep_param;
  for (const std::string& s : cfg.schemes) out << '\t' << s;
  bool ratios = false;
  for (const PointSummary& p : summaries)
    for (double r : p.mean_ratio)
      if (r >= 0.0) ratios = true;
  if (ratios)
    for (const std::string& s : cfg.schemes)
      if (s != cfg.baseline) out << '\t' << s << "/" << cfg.baseline;
  out << "\n";
  for (const PointSummary& p : summaries) {
    out << p.sweep_value;
    for (double r : p.mean_revenue) out << '\t' << format_money(r);
    if (ratios)
      for (size_t s = 0; s < cfg.schemes.size(); ++s)
        if (cfg.schemes[s] != cfg.baseline) out << '\t' << format_money(p.mean_ratio[s]);
    out << "\n";
  }
}

}  // namespace qpricing
