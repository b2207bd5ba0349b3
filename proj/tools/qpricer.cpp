// Command-line front end: generate instances, run pricing schemes, sweep
// benchmarks to CSV, and verify cross-module invariants on one instance.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpricing/qpricing.hpp"

namespace {

using namespace qpricing;

std::string basename_of(const std::string& path) {
  size_t slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

Instance load_validated(const std::string& path) {
  Instance inst = load_instance(path);
  std::vector<std::string> violations = validate_instance(inst);
  if (!violations.empty()) {
    std::string msg = "instance " + path + " is invalid:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw ValidationError(msg);
  }
  return inst;
}

int cmd_gen(const std::string& kind, const GenConfig& cfg, const std::vector<long long>& a,
            long long budget, const std::string& out) {
  Instance inst = [&]() {
    if (kind == "single-minded") return gen_single_minded(cfg);
    if (kind == "cut") return gen_cut_instance(cfg);
    return gen_subset_sum_gadget(a, budget);
  }();
  save_json(out, instance_to_json(inst));
  std::cout << "wrote " << kind << " instance (n=" << inst.buyer_count() << ", m=" << inst.m
            << ") to " << out << "\n";
  return 0;
}

int cmd_run(const std::string& instance_path, const std::string& scheme, std::uint64_t seed,
            int optimal_cap, const std::string& prices_out, bool csv) {
  Instance inst = load_validated(instance_path);
  SchemeRun run = run_scheme(inst, scheme, seed, optimal_cap);
  std::cout << "instance: " << instance_path << " (n=" << inst.buyer_count() << ", m=" << inst.m
            << ")\n"
            << "scheme:   " << scheme << "\n"
            << "revenue:  " << format_money(run.report.revenue) << "\n"
            << "served:   " << run.report.served.size() << " of " << inst.buyer_count() << "\n"
            << "wall_ms:  " << run.wall_ms << "\n";
  if (csv) {
    std::cout << "instance_id,scheme,revenue,served_count,seed\n"
              << basename_of(instance_path) << ',' << scheme << ','
              << format_money(run.report.revenue) << ',' << run.report.served.size() << ',' << seed
              << "\n";
  }
  if (!prices_out.empty()) {
    nlohmann::json j{{"m", inst.m}, {"scheme", scheme}, {"prices", run.prices.prices}};
    save_json(prices_out, j);
  }
  return 0;
}

int cmd_bench(const std::string& config_path, const std::string& output_override) {
  std::ifstream in(config_path);
  if (!in) throw IoError("cannot open bench config: " + config_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bench config parse error: ") + e.what());
  }
  BenchConfig cfg = bench_config_from_json(j);
  if (!output_override.empty()) cfg.output = output_override;
  std::vector<ResultRow> rows = run_bench(cfg);
  std::ofstream out(cfg.output);
  if (!out) throw IoError("cannot open output file: " + cfg.output);
  write_csv(out, rows, cfg.timing);
  if (!out) throw IoError("failed writing output file: " + cfg.output);
  print_summary(std::cout, cfg, summarize_bench(cfg, rows));
  std::cout << "wrote " << rows.size() << " rows to " << cfg.output << "\n";
  return 0;
}

int cmd_verify(const std::string& instance_path, std::uint64_t seed) {
  Instance inst = load_validated(instance_path);
  VerifyOptions opt;
  opt.seed = seed;
  VerifyReport rep = verify_instance_checks(inst, opt);
  for (const auto& line : rep.lines) std::cout << line << "\n";
  std::cout << (rep.ok ? "all checks passed" : std::to_string(rep.failures) + " check(s) failed")
            << " (" << rep.skips << " skipped)\n";
  return rep.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arbitrage-free base-query pricing: generators, schemes, benchmarks"};
  app.require_subcommand(1);

  std::string gen_kind = "single-minded";
  qpricing::GenConfig gen_cfg;
  std::vector<long long> gadget_a;
  long long gadget_b = 1;
  std::string gen_out = "instance.json";
  auto* gen = app.add_subcommand("gen", "generate an instance JSON file");
  gen->add_option("--kind", gen_kind, "single-minded | cut | gadget")
      ->check(CLI::IsMember({"single-minded", "cut", "gadget"}));
  gen->add_option("-n,--buyers", gen_cfg.n, "number of buyers");
  gen->add_option("-m,--pool", gen_cfg.m, "number of base queries");
  gen->add_option("--value-lo", gen_cfg.value_lo, "buyer value range, lower end (exclusive)");
  gen->add_option("--value-hi", gen_cfg.value_hi, "buyer value range, upper end (inclusive)");
  gen->add_option("--layers", gen_cfg.layers, "cut graphs: arc layers per buyer");
  gen->add_option("--width", gen_cfg.width, "cut graphs: nodes per interior column");
  gen->add_option("--inf-edge-prob", gen_cfg.inf_edge_prob, "cut graphs: infinite-edge probability");
  gen->add_option("--seed", gen_cfg.seed, "generator seed");
  gen->add_option("--a", gadget_a, "gadget: positive integers of the subset-sum pair");
  gen->add_option("--B", gadget_b, "gadget: subset-sum target");
  gen->add_option("-o,--output", gen_out, "output path");

  std::string run_scheme_name;
  std::string run_instance;
  std::string run_prices_out;
  std::uint64_t run_seed = 0;
  int run_optimal_cap = 16;
  bool run_csv = false;
  auto* run = app.add_subcommand("run", "run one pricing scheme on an instance");
  run->add_option("--scheme", run_scheme_name, "pricing scheme")
      ->required()
      ->check(CLI::IsMember({"rand-single", "det-single", "lp-multi", "comb-multi", "optimal"}));
  run->add_option("--instance", run_instance, "instance JSON path")->required();
  run->add_option("--seed", run_seed, "seed (rand-single only)");
  run->add_option("--optimal-cap", run_optimal_cap, "optimal: subset enumeration cap");
  run->add_option("--prices-out", run_prices_out, "write the price vector JSON here");
  run->add_flag("--csv", run_csv, "also print the result as a CSV row");

  std::string bench_config;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "run a benchmark sweep to CSV");
  bench->add_option("--config", bench_config, "bench config JSON path")->required();
  bench->add_option("-o,--output", bench_out, "CSV output path (overrides config)");

  std::string verify_instance;
  std::uint64_t verify_seed = 7;
  auto* verify = app.add_subcommand("verify", "run the invariant suite on an instance");
  verify->add_option("--instance", verify_instance, "instance JSON path")->required();
  verify->add_option("--seed", verify_seed, "probe price seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_kind, gen_cfg, gadget_a, gadget_b, gen_out);
    if (run->parsed())
      return cmd_run(run_instance, run_scheme_name, run_seed, run_optimal_cap, run_prices_out,
                     run_csv);
    if (bench->parsed()) return cmd_bench(bench_config, bench_out);
    return cmd_verify(verify_instance, verify_seed);
  } catch (const qpricing::ContractError& e) {
    std::cerr << "contract error: " << e.what() << "\n";
    return 3;
  } catch (const qpricing::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const qpricing::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  }
}
