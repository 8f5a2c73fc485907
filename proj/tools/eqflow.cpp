// eqflow: balanced flows in equality networks from the command line.
//
// Exit codes: 0 ok, 1 verification failed, 2 input error.

#include "eqflow/balanced.hpp"
#include "eqflow/bench.hpp"
#include "eqflow/eqnet_io.hpp"
#include "eqflow/generators.hpp"
#include "eqflow/maxflow.hpp"
#include "eqflow/parametric.hpp"
#include "eqflow/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using namespace eqflow;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInputError = 2;

// Thrown for anything the user has to fix in the input.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

EqualityNetwork load_network(const std::string& path) {
  try {
    return parse_eqnet(read_file(path));
  } catch (const NetworkError& e) {
    throw InputError(path + ": " + e.what());
  }
}

double millis_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

void print_failure(const BalancednessCertificate& cert) {
  if (const CheckResult* bad = cert.first_failure())
    std::cout << "not balanced: " << bad->name << (bad->detail.empty() ? "" : ": " + bad->detail) << "\n";
}

struct BalancedArgs {
  std::string path;
  bool json = false;
  bool verify = false;
  std::string write_flow;
};

int cmd_balanced(const BalancedArgs& args) {
  const EqualityNetwork net = load_network(args.path);
  const auto start = std::chrono::steady_clock::now();
  const BalancedFlowResult result = balanced_flow(net);
  const double millis = millis_since(start);
  std::optional<BalancednessCertificate> cert;
  if (args.verify) cert = verify_balanced(net, result.flow);

  if (!args.write_flow.empty()) {
    std::ofstream out(args.write_flow);
    if (!out) throw InputError("cannot write '" + args.write_flow + "'");
    out << serialize_flow(net, result.flow);
  }
  if (args.json) {
    std::cout << balanced_report(net, args.path, result, millis, cert).dump(2) << "\n";
  } else {
    std::cout << balanced_text(net, result);
    if (cert && cert->is_balanced) std::cout << "verified balanced\n";
    if (cert && !cert->is_balanced) print_failure(*cert);
  }
  return cert && !cert->is_balanced ? kVerifyFailed : kOk;
}

int cmd_breakpoints(const std::string& path, bool json) {
  const EqualityNetwork net = load_network(path);
  const auto start = std::chrono::steady_clock::now();
  const BreakpointProfile profile = vertex_move_breakpoints(make_parametric(net));
  const double millis = millis_since(start);
  if (json)
    std::cout << breakpoints_report(net, path, profile, millis).dump(2) << "\n";
  else
    std::cout << breakpoints_text(net, profile);
  return kOk;
}

int cmd_maxflow(const std::string& path, const std::string& lambda_text, bool json) {
  const EqualityNetwork net = load_network(path);
  std::optional<Rational> lambda;
  if (!lambda_text.empty()) {
    lambda = try_parse_rational(lambda_text);
    if (!lambda) throw InputError("malformed lambda '" + lambda_text + "'");
    if (*lambda < 0) throw InputError("lambda must be non-negative");
  }
  const FlowNetwork fn = lambda ? instantiate(make_parametric(net), *lambda) : to_flow_network(net);
  const FlowResult result = max_flow(fn);
  const Cut cut = min_sink_side_cut(fn, result);
  if (json) {
    Json side = Json::array();
    for (int v : cut.source_vertices()) side.push_back(fn.label(v));
    Json out{{"instance", instance_json(net, path)}, {"value", to_string(result.value)}, {"source_side", side}};
    if (lambda) out["lambda"] = to_string(*lambda);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "value " << to_string(result.value) << "\n";
    std::cout << "source side " << describe_source_side(fn, cut) << "\n";
  }
  return kOk;
}

int cmd_verify(const std::string& path, const std::string& flow_path, bool json) {
  const EqualityNetwork net = load_network(path);
  Flow flow;
  try {
    flow = parse_flow(net, read_file(flow_path));
  } catch (const NetworkError& e) {
    throw InputError(flow_path + ": " + e.what());
  }
  const BalancednessCertificate cert = verify_balanced(net, flow);
  if (json) {
    std::cout << certificate_json(cert).dump(2) << "\n";
  } else {
    for (const auto& c : cert.checks)
      std::cout << (c.passed ? "ok   " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    if (cert.is_balanced)
      std::cout << "balanced\n";
    else
      print_failure(cert);
  }
  return cert.is_balanced ? kOk : kVerifyFailed;
}

struct GenArgs {
  std::vector<int> random;  // buyers goods edges
  std::string blocks;
  std::uint64_t seed = 1;
  std::string output;
  std::int64_t budget_min = 1, budget_max = 12, price_min = 1, price_max = 12;
  int cross = 0;
};

int cmd_gen(const GenArgs& args) {
  if (args.random.empty() == args.blocks.empty()) throw InputError("gen: give exactly one of --random or --blocks");
  EqualityNetwork net = [&] {
    try {
      if (!args.random.empty())
        return gen_random(RandomSpec{args.random[0], args.random[1], args.random[2], args.seed, args.budget_min,
                                     args.budget_max, args.price_min, args.price_max});
      return gen_blocks(parse_block_spec(args.blocks), args.seed, args.cross);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }();
  const std::string text = serialize_eqnet(net);
  if (args.output.empty() || args.output == "-") {
    std::cout << text;
  } else {
    std::ofstream out(args.output);
    if (!out) throw InputError("cannot write '" + args.output + "'");
    out << text;
  }
  return kOk;
}

int cmd_bench(const BenchOptions& opt, bool json) {
  if (opt.sizes.empty()) throw InputError("bench: no sizes");
  for (int n : opt.sizes)
    if (n < 1) throw InputError("bench: sizes must be positive");
  if (opt.bits < 1 || opt.bits > 30) throw InputError("bench: --bits must be in [1, 30]");
  const std::vector<BenchRow> rows = run_bench(opt);
  if (json)
    std::cout << bench_json(rows).dump(2) << "\n";
  else
    std::cout << bench_table(rows);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced flows in equality networks"};
  app.require_subcommand(1);

  BalancedArgs balanced;
  auto* sub_balanced = app.add_subcommand("balanced", "Compute the balanced flow");
  sub_balanced->add_option("file", balanced.path, "eqnet file")->required();
  sub_balanced->add_flag("--json", balanced.json, "JSON report");
  sub_balanced->add_flag("--verify", balanced.verify, "Check the result; exit 1 if not balanced");
  sub_balanced->add_option("--write-flow", balanced.write_flow, "Also write the flow file here");

  std::string bp_path;
  bool bp_json = false;
  auto* sub_breakpoints = app.add_subcommand("breakpoints", "Per-vertex move values of the parametric sweep");
  sub_breakpoints->add_option("file", bp_path, "eqnet file")->required();
  sub_breakpoints->add_flag("--json", bp_json, "JSON report");

  std::string mf_path, mf_lambda;
  bool mf_json = false;
  auto* sub_maxflow = app.add_subcommand("maxflow", "Maximum flow and minimum-sink-side cut");
  sub_maxflow->add_option("file", mf_path, "eqnet file")->required();
  sub_maxflow->add_option("--lambda", mf_lambda, "Source capacities max(0, e_i - lambda)");
  sub_maxflow->add_flag("--json", mf_json, "JSON report");

  std::string vf_path, vf_flow;
  bool vf_json = false;
  auto* sub_verify = app.add_subcommand("verify", "Check a flow for balancedness");
  sub_verify->add_option("file", vf_path, "eqnet file")->required();
  sub_verify->add_option("--flow", vf_flow, "flow file")->required();
  sub_verify->add_flag("--json", vf_json, "JSON report");

  GenArgs gen;
  auto* sub_gen = app.add_subcommand("gen", "Generate a seeded instance");
  sub_gen->add_option("--random", gen.random, "buyers goods edges")->expected(3);
  sub_gen->add_option("--blocks", gen.blocks, "k:e:r,... blocks of decreasing surplus");
  sub_gen->add_option("--seed", gen.seed, "RNG seed");
  sub_gen->add_option("-o,--output", gen.output, "Output file (default stdout)");
  sub_gen->add_option("--budget-min", gen.budget_min);
  sub_gen->add_option("--budget-max", gen.budget_max);
  sub_gen->add_option("--price-min", gen.price_min);
  sub_gen->add_option("--price-max", gen.price_max);
  sub_gen->add_option("--cross", gen.cross, "Extra edges from later blocks to earlier goods");

  BenchOptions bench;
  bool bench_json_out = false;
  auto* sub_bench = app.add_subcommand("bench", "Parametric sweep vs bisection baseline");
  sub_bench->add_option("--sizes", bench.sizes, "Comma-separated buyer counts")->delimiter(',')->required();
  sub_bench->add_option("--seed", bench.seed, "RNG seed");
  sub_bench->add_option("--repeats", bench.repeats, "Instances per size")->check(CLI::PositiveNumber);
  sub_bench->add_option("--edges-per-buyer", bench.edges_per_buyer)->check(CLI::PositiveNumber);
  sub_bench->add_option("--bits", bench.bits, "Value width of budgets and prices");
  sub_bench->add_flag("--json", bench_json_out, "JSON table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*sub_balanced) return cmd_balanced(balanced);
    if (*sub_breakpoints) return cmd_breakpoints(bp_path, bp_json);
    if (*sub_maxflow) return cmd_maxflow(mf_path, mf_lambda, mf_json);
    if (*sub_verify) return cmd_verify(vf_path, vf_flow, vf_json);
    if (*sub_gen) return cmd_gen(gen);
    if (*sub_bench) return cmd_bench(bench, bench_json_out);
  } catch (const InputError& e) {
    std::cerr << "eqflow: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "eqflow: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
