#pragma once

// Parametric sweep against the bisection baseline on seeded random
// instances. Sizes run one after another, each solve single-threaded.

#include "eqflow/balanced.hpp"
#include "eqflow/generators.hpp"
#include "eqflow/oracle/bisection_breakpoints.hpp"
#include "eqflow/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace eqflow {

struct BenchOptions {
  std::vector<int> sizes;
  std::uint64_t seed = 1;
  int repeats = 1;
  int edges_per_buyer = 8;
  int bits = 16;  // budgets and prices drawn from [1, 2^bits - 1]
};

struct BenchRow {
  int size = 0;
  int repeat = 0;
  std::uint64_t seed = 0;
  int buyers = 0, goods = 0, edges = 0;
  int breakpoints = 0;
  int parametric_calls = 0;  // sweep only, as counted against the budget
  int call_budget = 0;
  double parametric_ms = 0;  // full balanced_flow
  long long baseline_calls = 0;  // every buyer bisected on its own
  int baseline_shared_calls = 0;  // same searches with queries shared
  double baseline_ms = 0;
  bool agree = false;  // identical move values

  double call_ratio() const { return static_cast<double>(parametric_calls) / static_cast<double>(baseline_calls); }
  double shared_call_ratio() const {
    return static_cast<double>(parametric_calls) / static_cast<double>(baseline_shared_calls);
  }
};

inline std::uint64_t bench_instance_seed(std::uint64_t seed, int size, int repeat) {
  return seed * 1000003ULL + static_cast<std::uint64_t>(size) * 7919ULL + static_cast<std::uint64_t>(repeat);
}

inline RandomSpec bench_spec(int size, int edges_per_buyer, int bits, std::uint64_t seed) {
  const long long full = static_cast<long long>(size) * size;
  const int edges = static_cast<int>(std::min<long long>(full, static_cast<long long>(size) * edges_per_buyer));
  const std::int64_t top = (std::int64_t{1} << bits) - 1;
  return RandomSpec{size, size, std::max(edges, size), seed, 1, top, 1, top};
}

inline BenchRow bench_one(int size, int repeat, const BenchOptions& opt) {
  using clock = std::chrono::steady_clock;
  BenchRow row;
  row.size = size;
  row.repeat = repeat;
  row.seed = bench_instance_seed(opt.seed, size, repeat);
  const EqualityNetwork net = gen_random(bench_spec(size, opt.edges_per_buyer, opt.bits, row.seed));
  row.buyers = net.buyer_count();
  row.goods = net.good_count();
  row.edges = net.edge_count();
  row.call_budget = breakpoint_call_budget(net);

  auto t0 = clock::now();
  const BalancedFlowResult result = balanced_flow(net);
  auto t1 = clock::now();
  oracle::BisectionStats stats;
  const BreakpointProfile baseline = oracle::breakpoints_oracle(make_parametric(net), &stats);
  auto t2 = clock::now();

  row.breakpoints = static_cast<int>(result.profile.breakpoints.size());
  row.parametric_calls = result.profile.maxflow_calls;
  row.parametric_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  row.baseline_calls = stats.per_buyer_calls;
  row.baseline_shared_calls = stats.shared_calls;
  row.baseline_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
  row.agree = baseline.move_lambda == result.profile.move_lambda;
  return row;
}

inline std::vector<BenchRow> run_bench(const BenchOptions& opt) {
  std::vector<BenchRow> rows;
  for (int size : opt.sizes)
    for (int r = 0; r < opt.repeats; ++r) rows.push_back(bench_one(size, r, opt));
  return rows;
}

inline std::string bench_table(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%6s %3s %6s %4s %6s %6s %10s %9s %7s %10s %7s %7s %5s\n", "size", "rep", "edges",
                "bps", "calls", "budget", "param_ms", "base_all", "shared", "base_ms", "ratio", "r_shrd", "agree");
  out << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%6d %3d %6d %4d %6d %6d %10.1f %9lld %7d %10.1f %7.4f %7.4f %5s\n", r.size,
                  r.repeat, r.edges, r.breakpoints, r.parametric_calls, r.call_budget, r.parametric_ms,
                  r.baseline_calls, r.baseline_shared_calls, r.baseline_ms, r.call_ratio(), r.shared_call_ratio(),
                  r.agree ? "yes" : "NO");
    out << line;
  }
  return out.str();
}

inline Json bench_json(const std::vector<BenchRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows)
    out.push_back(Json{{"size", r.size},
                       {"repeat", r.repeat},
                       {"seed", r.seed},
                       {"buyers", r.buyers},
                       {"goods", r.goods},
                       {"edges", r.edges},
                       {"breakpoints", r.breakpoints},
                       {"calls", r.parametric_calls},
                       {"call_budget", r.call_budget},
                       {"millis", r.parametric_ms},
                       {"baseline_calls", r.baseline_calls},
                       {"baseline_shared_calls", r.baseline_shared_calls},
                       {"baseline_millis", r.baseline_ms},
                       {"call_ratio", r.call_ratio()},
                       {"shared_call_ratio", r.shared_call_ratio()},
                       {"agree", r.agree}});
  return out;
}

}  // namespace eqflow
