// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "eqflow/balanced.hpp"
#include "eqflow/bench.hpp"
#include "eqflow/generators.hpp"
#include "eqflow/oracle/bisection_breakpoints.hpp"
#include "eqflow/oracle/min_norm_point.hpp"
#include "eqflow/parametric.hpp"
#include "fixtures.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace eqflow;
using Clock = std::chrono::steady_clock;

// Pinned tolerances and sizes.
const Rational kComponentTolerance(1, 1000000);
const Rational kRelativeNormTolerance(1, 1000000000);
const Rational kOracleGap(1, 1000000000000LL);
constexpr int kCorpusSize = 500;
constexpr double kFixtureSeconds = 1.0;
constexpr double kCorpusSeconds = 300.0;
constexpr double kLargeSeconds = 30.0;
constexpr int kLargeSize = 1000;
constexpr int kNestingInstances = 50;
constexpr int kNestingPairs = 10;
constexpr int kRelabelInstances = 100;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// buyers = goods in [2, 7], edges in [n, min(n^2, 14)], values in [1, 12].
EqualityNetwork corpus_instance(int k) {
  Rng rng(0xC0FFEEULL + static_cast<std::uint64_t>(k));
  const int n = static_cast<int>(rng.uniform(2, 7));
  const int edges = static_cast<int>(rng.uniform(n, std::min(n * n, 14)));
  return gen_random(RandomSpec{n, n, edges, 1000ULL + static_cast<std::uint64_t>(k), 1, 12, 1, 12});
}

struct Solved {
  EqualityNetwork net;
  BalancedFlowResult result;
};

class Report {
 public:
  void line(int id, bool passed, const std::string& what, const std::string& detail) {
    std::printf("%s %2d %s: %s\n", passed ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    std::fflush(stdout);
    all_passed_ = all_passed_ && passed;
  }
  bool all_passed() const { return all_passed_; }

 private:
  bool all_passed_ = true;
};

// Collects the first few failure descriptions.
class Failures {
 public:
  void add(const std::string& what) {
    if (count_++ < 3) first_ += (first_.empty() ? "" : "; ") + what;
  }
  int count() const { return count_; }
  std::string summary(const std::string& ok) const {
    return count_ == 0 ? ok : std::to_string(count_) + " failures, e.g. " + first_;
  }

 private:
  int count_ = 0;
  std::string first_;
};

Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", s);
  return buf;
}

void criterion_fixtures(Report& report) {
  const auto start = Clock::now();
  struct Expected {
    const char* name;
    EqualityNetwork net;
    Rational value;
    std::vector<Rational> surpluses;
    std::vector<Rational> breakpoints;
  };
  const std::vector<Expected> fixtures{{"FIX-A", fixtures::fix_a(), 2, {0}, {}},
                                       {"FIX-B", fixtures::fix_b(), 4, {1, 1}, {1}},
                                       {"FIX-C", fixtures::fix_c(), 3, {3, 0}, {3}}};
  Failures bad;
  for (const auto& f : fixtures) {
    const BalancedFlowResult r = balanced_flow(f.net);
    if (r.value != f.value) bad.add(std::string(f.name) + " value " + to_string(r.value));
    if (r.surpluses != f.surpluses) bad.add(std::string(f.name) + " surpluses");
    if (r.profile.breakpoints != f.breakpoints) bad.add(std::string(f.name) + " breakpoints");
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= kFixtureSeconds) bad.add("took " + fmt_seconds(elapsed));
  report.line(1, bad.count() == 0, "fixture exactness", bad.summary("3 fixtures exact in " + fmt_seconds(elapsed)));
}

void criterion_min_norm(Report& report, const std::vector<Solved>& corpus, double solve_seconds) {
  const auto start = Clock::now();
  Failures bad;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const auto& [net, r] = corpus[k];
    const std::vector<Rational> expected = oracle::squared_norm_oracle(net, kOracleGap);
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (abs(expected[i] - r.surpluses[i]) > kComponentTolerance)
        bad.add("instance " + std::to_string(k) + " buyer " + std::to_string(i + 1));
    const Rational ours = squared_surplus_norm(r.surpluses), theirs = squared_surplus_norm(expected);
    if (abs(ours - theirs) > kRelativeNormTolerance * (theirs > 0 ? theirs : Rational(1)))
      bad.add("instance " + std::to_string(k) + " norm");
  }
  const double elapsed = seconds_since(start) + solve_seconds;
  if (elapsed >= kCorpusSeconds) bad.add("took " + fmt_seconds(elapsed));
  report.line(2, bad.count() == 0, "squared-norm oracle equivalence",
              bad.summary(std::to_string(corpus.size()) + " instances in " + fmt_seconds(elapsed)));
}

void criterion_sweep_oracle(Report& report, const std::vector<Solved>& corpus) {
  Failures bad;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const BreakpointProfile expected = oracle::breakpoints_oracle(make_parametric(corpus[k].net));
    if (expected.move_lambda != corpus[k].result.profile.move_lambda) bad.add("instance " + std::to_string(k));
  }
  report.line(3, bad.count() == 0, "breakpoint oracle equivalence",
              bad.summary("all vertex move values equal on " + std::to_string(corpus.size()) + " instances"));
}

void criterion_certificates(Report& report, const std::vector<Solved>& corpus) {
  Failures bad;
  int checked = 0;
  auto check = [&](const std::string& name, const EqualityNetwork& net, const Flow& flow) {
    ++checked;
    const BalancednessCertificate cert = verify_balanced(net, flow);
    if (!cert.is_balanced) bad.add(name);
  };
  check("FIX-A", fixtures::fix_a(), balanced_flow(fixtures::fix_a()).flow);
  check("FIX-B", fixtures::fix_b(), balanced_flow(fixtures::fix_b()).flow);
  check("FIX-C", fixtures::fix_c(), balanced_flow(fixtures::fix_c()).flow);
  for (std::size_t k = 0; k < corpus.size(); ++k) check("instance " + std::to_string(k), corpus[k].net, corpus[k].result.flow);

  const EqualityNetwork b = fixtures::fix_b();
  const BalancednessCertificate unbalanced = verify_balanced(b, fixtures::fix_b_unbalanced_flow(b));
  const CheckResult* locality = unbalanced.find(kCheckFlowLocality);
  const CheckResult* maximal = unbalanced.find(kCheckMaximality);
  if (unbalanced.is_balanced || !locality || locality->passed) bad.add("unbalanced FIX-B flow not rejected by flow-locality");
  if (!maximal || !maximal->passed) bad.add("unbalanced FIX-B flow should still be maximum");
  report.line(4, bad.count() == 0, "certificate suite",
              bad.summary(std::to_string(checked) + " balanced flows certified; FIX-B counterexample rejected (" +
                          (locality ? locality->detail : std::string("?")) + ")"));
}

void criterion_nesting(Report& report) {
  Failures bad;
  Rng rng(77);
  for (int k = 0; k < kNestingInstances; ++k) {
    const int n = static_cast<int>(rng.uniform(2, 9));
    const int edges = static_cast<int>(rng.uniform(n, std::min(n * n, 3 * n)));
    const EqualityNetwork net =
        gen_random(RandomSpec{n, n, edges, static_cast<std::uint64_t>(rng.uniform(1, 1 << 30)), 1, 20, 1, 20});
    const ParametricNetwork pn = make_parametric(net);
    const ParametricCutSolver solver(pn);
    // Sample on a grid fine enough to land between breakpoints and on them.
    const std::int64_t den = rng.uniform(1, 12);
    const std::int64_t top = floor(pn.lambda_max * Rational(den)).convert_to<std::int64_t>() + den;
    for (int p = 0; p < kNestingPairs; ++p) {
      Rational x(rng.uniform(0, top), den), y(rng.uniform(0, top), den);
      if (x < y) std::swap(x, y);
      const Cut high = solver.min_sink_cut(x), low = solver.min_sink_cut(y);
      if (!high.nested_in(low))
        bad.add("instance " + std::to_string(k) + " X(" + to_string(x) + ") not in X(" + to_string(y) + ")");
    }
  }
  report.line(5, bad.count() == 0, "source-side nesting",
              bad.summary(std::to_string(kNestingInstances * kNestingPairs) + " lambda pairs nested"));
}

// Source side predicted from the blocks for lambda strictly between the
// surpluses of blocks i+1 and i (1-based): s plus blocks 1..i.
std::vector<bool> predicted_side(const EqualityNetwork& net, const Blocks& blocks, std::size_t upto) {
  std::vector<bool> side(net.vertex_count(), false);
  side[net.source_vertex()] = true;
  for (std::size_t b = 0; b < upto; ++b) {
    for (int i : blocks[b].buyers) side[net.buyer_vertex(i)] = true;
    for (int j : blocks[b].goods) side[net.good_vertex(j)] = true;
  }
  return side;
}

// A buyer whose surplus equals its budget spends nothing. Once lambda passes
// its budget the source arc has capacity 0, so the minimum-sink-side cut
// takes it whenever a neighbouring good is already on the source side.
bool idle_buyer(const EqualityNetwork& net, const BalancedFlowResult& r, int v) {
  return v >= net.buyer_vertex(0) && v < net.good_vertex(0) && r.surpluses[v - 1] == net.budget(v - 1);
}

void criterion_block_cuts(Report& report, const std::vector<Solved>& corpus) {
  Failures bad;
  int intervals = 0, affected = 0, only_idle = 0;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const auto& [net, r] = corpus[k];
    const ParametricNetwork pn = make_parametric(net);
    const ParametricCutSolver solver(pn);
    bool instance_bad = false, instance_idle = true;
    for (std::size_t i = 1; i < r.blocks.size(); ++i) {
      const Rational mid = (r.blocks[i].surplus + r.blocks[i - 1].surplus) / 2;
      ++intervals;
      const Cut cut = solver.min_sink_cut(mid);
      const std::vector<bool> expected = predicted_side(net, r.blocks, i);
      if (cut.source_side == expected) continue;
      bad.add("instance " + std::to_string(k) + " at " + to_string(mid) + " got " +
              describe_source_side(to_flow_network(net), cut));
      instance_bad = true;
      for (int v = 0; v < net.vertex_count(); ++v)
        if (cut.source_side[v] != expected[v] && (expected[v] || !idle_buyer(net, r, v))) instance_idle = false;
    }
    affected += instance_bad;
    only_idle += instance_bad && instance_idle;
  }
  std::string detail = bad.summary(std::to_string(intervals) + " intervals match");
  if (affected)
    detail += " [" + std::to_string(affected) + " instances; in " + std::to_string(only_idle) +
              " the only extra vertices are buyers with surplus equal to budget]";
  report.line(6, bad.count() == 0, "block cuts at interval midpoints", detail);
}

void criterion_saturation(Report& report, const std::vector<Solved>& corpus) {
  Failures bad;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const auto& [net, r] = corpus[k];
    const FlowNetwork reduced = with_source_capacities(net, r.reduced_caps);
    const FlowResult f = max_flow(reduced);
    for (int i = 0; i < net.buyer_count(); ++i) {
      const int arc = net.source_arc(i);
      if (f.flow.amount[arc] != r.reduced_caps[i] || r.flow.amount[arc] != r.reduced_caps[i])
        bad.add("instance " + std::to_string(k) + " buyer " + std::to_string(i + 1));
    }
  }
  report.line(7, bad.count() == 0, "source arcs saturated in the reduced network",
              bad.summary("every source arc saturated on " + std::to_string(corpus.size()) + " instances"));
}

void criterion_calls(Report& report, const std::vector<Solved>& corpus, const std::vector<BenchRow>& large) {
  Failures bad;
  int worst_used = 0, worst_budget = 1;
  auto check = [&](const std::string& name, int used, int budget) {
    if (used > budget) bad.add(name + " used " + std::to_string(used) + " > " + std::to_string(budget));
    if (static_cast<double>(used) / budget > static_cast<double>(worst_used) / worst_budget) {
      worst_used = used;
      worst_budget = budget;
    }
  };
  for (std::size_t k = 0; k < corpus.size(); ++k)
    check("instance " + std::to_string(k), corpus[k].result.profile.maxflow_calls,
          breakpoint_call_budget(corpus[k].net));
  for (const auto& row : large) check("size " + std::to_string(row.size), row.parametric_calls, row.call_budget);
  report.line(8, bad.count() == 0, "max-flow call budget",
              bad.summary("within budget; tightest " + std::to_string(worst_used) + "/" + std::to_string(worst_budget)));
}

struct LargeRun {
  Failures bad;
  std::string summary;
  std::vector<BenchRow> rows;
};

LargeRun run_large() {
  LargeRun out;
  Failures& bad = out.bad;
  BenchOptions opt;
  opt.sizes = {kLargeSize};
  opt.seed = 1;
  const RandomSpec spec = bench_spec(kLargeSize, opt.edges_per_buyer, opt.bits, bench_instance_seed(opt.seed, kLargeSize, 0));
  const EqualityNetwork net = gen_random(spec);
  const auto start = Clock::now();
  const BalancedFlowResult r = balanced_flow(net);
  const double elapsed = seconds_since(start);
  if (elapsed >= kLargeSeconds) bad.add("balanced_flow took " + fmt_seconds(elapsed));

  out.rows = run_bench(opt);
  const BenchRow& row = out.rows.front();
  if (!row.agree) bad.add("bench baseline disagrees");
  if (!(row.call_ratio() < 1)) bad.add("call ratio " + std::to_string(row.call_ratio()));
  std::ostringstream ok;
  ok << net.buyer_count() << "x" << net.good_count() << ", " << net.edge_count() << " edges, " << fmt_seconds(elapsed)
     << ", " << r.maxflow_calls << " max-flows; ratio " << row.parametric_calls << "/" << row.baseline_calls << " = "
     << row.call_ratio();
  out.summary = bad.summary(ok.str());
  return out;
}

void criterion_relabel(Report& report, const std::vector<Solved>& corpus) {
  Failures bad;
  Rng rng(4242);
  for (int k = 0; k < kRelabelInstances; ++k) {
    const auto& [net, r] = corpus[k];
    std::vector<int> buyer_perm(net.buyer_count()), good_perm(net.good_count());
    for (int i = 0; i < net.buyer_count(); ++i) buyer_perm[i] = i;
    for (int j = 0; j < net.good_count(); ++j) good_perm[j] = j;
    rng.shuffle(buyer_perm);
    rng.shuffle(good_perm);
    std::vector<Rational> budgets(net.buyer_count()), prices(net.good_count());
    for (int i = 0; i < net.buyer_count(); ++i) budgets[buyer_perm[i]] = net.budget(i);
    for (int j = 0; j < net.good_count(); ++j) prices[good_perm[j]] = net.price(j);
    std::vector<EqualityEdge> edges;
    for (const auto& e : net.edges()) edges.push_back({buyer_perm[e.buyer], good_perm[e.good]});
    rng.shuffle(edges);
    const BalancedFlowResult relabelled = balanced_flow(EqualityNetwork(budgets, prices, edges));
    for (int i = 0; i < net.buyer_count(); ++i)
      if (relabelled.surpluses[buyer_perm[i]] != r.surpluses[i]) {
        bad.add("instance " + std::to_string(k));
        break;
      }
  }
  report.line(10, bad.count() == 0, "relabelling invariance",
              bad.summary(std::to_string(kRelabelInstances) + " permuted instances map exactly"));
}

}  // namespace

int main() {
  Report report;
  try {
    criterion_fixtures(report);

    const auto start = Clock::now();
    std::vector<Solved> corpus;
    for (int k = 0; k < kCorpusSize; ++k) {
      EqualityNetwork net = corpus_instance(k);
      BalancedFlowResult r = balanced_flow(net);
      corpus.push_back({std::move(net), std::move(r)});
    }
    const double solve_seconds = seconds_since(start);

    criterion_min_norm(report, corpus, solve_seconds);
    criterion_sweep_oracle(report, corpus);
    criterion_certificates(report, corpus);
    criterion_nesting(report);
    criterion_block_cuts(report, corpus);
    criterion_saturation(report, corpus);
    const LargeRun large = run_large();
    criterion_calls(report, corpus, large.rows);
    report.line(9, large.bad.count() == 0, "desk-scale instance", large.summary);
    criterion_relabel(report, corpus);
  } catch (const std::exception& e) {
    std::printf("FAIL    aborted: %s\n", e.what());
    return 1;
  }
  return report.all_passed() ? 0 : 1;
}
