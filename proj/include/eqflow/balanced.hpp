#pragma once

// Balanced flows: the maximum flow whose buyer surplus vector has minimum
// two-norm. Computed from one breakpoint sweep of the parametric network:
// each buyer's move value is its surplus, and a max flow on N with source
// capacities e_i - lambda_i saturates every source arc.

#include "eqflow/maxflow.hpp"
#include "eqflow/network.hpp"
#include "eqflow/parametric.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqflow {

struct Block {
  std::vector<int> buyers;  // 0-based
  std::vector<int> goods;   // 0-based
  Rational surplus;
};

// Ordered by strictly decreasing surplus; the last block has surplus 0 (and
// may be empty).
using Blocks = std::vector<Block>;

struct CrossBlockFlow {
  int good;
  std::vector<int> blocks;  // indices of the blocks sending flow into it
};

struct BlockPartition {
  Blocks blocks;
  std::vector<int> block_of_buyer;
  std::vector<int> block_of_good;
  std::vector<CrossBlockFlow> cross_block_flows;
};

struct BalancedFlowResult {
  Flow flow;  // on to_flow_network(net)
  Rational value;
  std::vector<Rational> surpluses;
  Blocks blocks;
  BreakpointProfile profile;
  std::vector<Rational> reduced_caps;  // e_i - lambda_i
  int maxflow_calls = 0;               // sweep plus the final solve
};

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

struct BalancednessCertificate {
  bool is_balanced = false;
  std::vector<CheckResult> checks;

  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  const CheckResult* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }
};

inline constexpr const char* kCheckMaximality = "maximality";
inline constexpr const char* kCheckBlockOrdering = "block-ordering";
inline constexpr const char* kCheckSaturation = "saturation";
inline constexpr const char* kCheckFlowLocality = "flow-locality";
inline constexpr const char* kCheckEdgeLocality = "edge-locality";
inline constexpr const char* kCheckSurplusAdjacency = "surplus-adjacency";

inline FlowNetwork reduced_network(const EqualityNetwork& net, const std::vector<Rational>& buyer_lambda) {
  if (static_cast<int>(buyer_lambda.size()) != net.buyer_count())
    throw std::invalid_argument("reduced_network: one lambda per buyer required");
  std::vector<Rational> caps;
  for (int i = 0; i < net.buyer_count(); ++i) {
    const Rational& l = buyer_lambda[i];
    if (l < 0 || l > net.budget(i))
      throw std::invalid_argument("reduced_network: lambda " + to_string(l) + " for buyer " + std::to_string(i + 1) +
                                  " outside [0, " + to_string(net.budget(i)) + "]");
    caps.push_back(net.budget(i) - l);
  }
  return with_source_capacities(net, caps);
}

// Groups buyers by equal surplus (descending). A good belongs to the block
// that sends it flow; goods without inflow join the lowest-surplus block
// among their neighbours. Goods fed by several blocks are reported and
// assigned to the lowest-surplus sender.
inline BlockPartition blocks_from_surpluses(const EqualityNetwork& net, const Flow& f) {
  const std::vector<Rational> r = surpluses(net, f);
  std::vector<Rational> levels = r;
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  if (levels.back() != 0) levels.push_back(Rational(0));

  BlockPartition out;
  out.blocks.resize(levels.size());
  for (std::size_t b = 0; b < levels.size(); ++b) out.blocks[b].surplus = levels[b];
  out.block_of_buyer.resize(net.buyer_count());
  for (int i = 0; i < net.buyer_count(); ++i) {
    const int b = static_cast<int>(std::find(levels.begin(), levels.end(), r[i]) - levels.begin());
    out.block_of_buyer[i] = b;
    out.blocks[b].buyers.push_back(i);
  }

  std::vector<std::set<int>> senders(net.good_count());
  std::vector<int> lowest_neighbour(net.good_count(), -1);
  for (int e = 0; e < net.edge_count(); ++e) {
    const auto& edge = net.edges()[e];
    const int b = out.block_of_buyer[edge.buyer];
    if (f.amount[net.edge_arc(e)] > 0) senders[edge.good].insert(b);
    lowest_neighbour[edge.good] = std::max(lowest_neighbour[edge.good], b);
  }
  out.block_of_good.resize(net.good_count());
  for (int j = 0; j < net.good_count(); ++j) {
    int b = lowest_neighbour[j];
    if (!senders[j].empty()) {
      b = *senders[j].rbegin();
      if (senders[j].size() > 1) out.cross_block_flows.push_back({j, {senders[j].begin(), senders[j].end()}});
    }
    out.block_of_good[j] = b;
    out.blocks[b].goods.push_back(j);
  }
  return out;
}

inline BalancedFlowResult balanced_flow(const EqualityNetwork& net) {
  const ParametricNetwork pn = make_parametric(net);
  BreakpointProfile profile = vertex_move_breakpoints(pn);

  // A buyer that spends nothing in every balanced flow (surplus e_i) has a
  // zero-capacity source arc for lambda >= e_i and may stay on the source
  // side beyond e_i; its surplus is the move value capped at the budget.
  std::vector<Rational> lambda;
  for (int i = 0; i < net.buyer_count(); ++i)
    lambda.push_back(std::min(profile.move_lambda[net.buyer_vertex(i)], net.budget(i)));
  const FlowNetwork reduced = reduced_network(net, lambda);
  FlowResult fr = max_flow(reduced);

  for (int i = 0; i < net.buyer_count(); ++i) {
    const int arc = net.source_arc(i);
    if (fr.flow.amount[arc] != reduced.arc(arc).capacity.value()) {
      std::ostringstream msg;
      msg << "balanced_flow: source arc of buyer " << i + 1 << " unsaturated in reduced network (flow "
          << to_string(fr.flow.amount[arc]) << ", capacity " << reduced.arc(arc).capacity << ", lambda "
          << to_string(lambda[i]) << ")";
      throw std::logic_error(msg.str());
    }
  }

  BalancedFlowResult result;
  result.value = fr.value;
  result.flow = std::move(fr.flow);
  result.surpluses = surpluses(net, result.flow);
  result.blocks = blocks_from_surpluses(net, result.flow).blocks;
  result.maxflow_calls = profile.maxflow_calls + 1;
  result.profile = std::move(profile);
  for (int i = 0; i < net.buyer_count(); ++i) result.reduced_caps.push_back(net.budget(i) - lambda[i]);
  return result;
}

namespace detail {

inline std::string buyer_name(int i) { return "b" + std::to_string(i + 1); }
inline std::string good_name(int j) { return "c" + std::to_string(j + 1); }

}  // namespace detail

// Necessary conditions for balancedness, checked in order:
//   maximality        f feasible and |f| equals the max-flow value of N
//   block-ordering    block surpluses strictly decreasing, last one >= 0
//   saturation        goods of positive-surplus blocks are fully sold
//   flow-locality     no flow from B_i into C_j for j != i
//   edge-locality     no edge from B_i to C_j for j > i
//   surplus-adjacency no edge from a positive-surplus buyer to an unsold good
inline BalancednessCertificate verify_balanced(const EqualityNetwork& net, const Flow& f) {
  BalancednessCertificate cert;
  const FlowNetwork fn = to_flow_network(net);
  const FlowViolations violations = flow_violations(fn, f);
  const Rational optimum = max_flow(fn).value;

  if (!violations.feasible()) {
    const std::string why = violations.capacity.empty() ? violations.conservation.front() : violations.capacity.front();
    cert.checks.push_back({kCheckMaximality, false, "infeasible flow: " + why});
    for (const char* name : {kCheckBlockOrdering, kCheckSaturation, kCheckFlowLocality, kCheckEdgeLocality,
                             kCheckSurplusAdjacency})
      cert.checks.push_back({name, false, "not evaluated: infeasible flow"});
    return cert;
  }
  cert.checks.push_back({kCheckMaximality, f.value == optimum,
                         f.value == optimum ? std::string()
                                            : "flow value " + to_string(f.value) + " below maximum " +
                                                  to_string(optimum)});

  const BlockPartition part = blocks_from_surpluses(net, f);
  const Blocks& blocks = part.blocks;

  {
    std::string detail;
    for (std::size_t b = 1; b < blocks.size(); ++b)
      if (!(blocks[b - 1].surplus > blocks[b].surplus)) detail = "block surpluses not strictly decreasing";
    if (blocks.back().surplus < 0) detail = "negative surplus";
    cert.checks.push_back({kCheckBlockOrdering, detail.empty(), detail});
  }

  auto sold = [&](int j) { return f.amount[net.sink_arc(j)] == net.price(j); };
  {
    std::string detail;
    for (const auto& block : blocks)
      if (block.surplus > 0)
        for (int j : block.goods)
          if (!sold(j) && detail.empty())
            detail = detail::good_name(j) + " in block with surplus " + to_string(block.surplus) + " is not sold out";
    cert.checks.push_back({kCheckSaturation, detail.empty(), detail});
  }
  {
    std::string detail;
    for (const auto& cross : part.cross_block_flows) {
      if (!detail.empty()) break;
      detail = "cross-block flow: " + detail::good_name(cross.good) + " receives flow from blocks with surpluses";
      for (int b : cross.blocks) detail += " " + to_string(blocks[b].surplus);
    }
    for (int e = 0; e < net.edge_count() && detail.empty(); ++e) {
      const auto& edge = net.edges()[e];
      if (f.amount[net.edge_arc(e)] > 0 && part.block_of_buyer[edge.buyer] != part.block_of_good[edge.good])
        detail = "cross-block flow: " + detail::buyer_name(edge.buyer) + "->" + detail::good_name(edge.good);
    }
    cert.checks.push_back({kCheckFlowLocality, detail.empty(), detail});
  }
  {
    std::string detail;
    for (const auto& edge : net.edges())
      if (part.block_of_good[edge.good] > part.block_of_buyer[edge.buyer] && detail.empty())
        detail = "edge " + detail::buyer_name(edge.buyer) + "->" + detail::good_name(edge.good) +
                 " leads to a lower-surplus block";
    cert.checks.push_back({kCheckEdgeLocality, detail.empty(), detail});
  }
  {
    const std::vector<Rational> r = surpluses(net, f);
    std::string detail;
    for (const auto& edge : net.edges())
      if (r[edge.buyer] > 0 && !sold(edge.good) && detail.empty())
        detail = detail::buyer_name(edge.buyer) + " has surplus " + to_string(r[edge.buyer]) + " but " +
                 detail::good_name(edge.good) + " is not sold out";
    cert.checks.push_back({kCheckSurplusAdjacency, detail.empty(), detail});
  }

  cert.is_balanced = std::all_of(cert.checks.begin(), cert.checks.end(), [](const auto& c) { return c.passed; });
  return cert;
}

}  // namespace eqflow
