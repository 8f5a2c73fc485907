#pragma once

// JSON and text renderings of computed results. Every rational goes out as a
// string "a" or "a/b" so that it re-parses exactly.

#include "eqflow/balanced.hpp"
#include "eqflow/network.hpp"
#include "eqflow/parametric.hpp"

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace eqflow {

using Json = nlohmann::ordered_json;

inline std::string vertex_name(const EqualityNetwork& net, int v) {
  if (v == net.source_vertex()) return "s";
  if (v == net.sink_vertex()) return "t";
  if (v < net.good_vertex(0)) return "b" + std::to_string(v);
  return "c" + std::to_string(v - net.buyer_count());
}

inline Json rationals_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& q : values) out.push_back(to_string(q));
  return out;
}

inline Json instance_json(const EqualityNetwork& net, const std::string& source) {
  return Json{{"source", source},
              {"buyers", net.buyer_count()},
              {"goods", net.good_count()},
              {"edges", net.edge_count()}};
}

inline Json blocks_json(const Blocks& blocks) {
  Json out = Json::array();
  for (const auto& block : blocks) {
    Json buyers = Json::array(), goods = Json::array();
    for (int i : block.buyers) buyers.push_back("b" + std::to_string(i + 1));
    for (int j : block.goods) goods.push_back("c" + std::to_string(j + 1));
    out.push_back(Json{{"surplus", to_string(block.surplus)}, {"buyers", buyers}, {"goods", goods}});
  }
  return out;
}

inline Json move_lambda_json(const EqualityNetwork& net, const BreakpointProfile& profile) {
  Json out = Json::object();
  for (int v = 1; v < net.sink_vertex(); ++v) out[vertex_name(net, v)] = to_string(profile.move_lambda[v]);
  return out;
}

// Nonzero buyer->good amounts.
inline Json flow_json(const EqualityNetwork& net, const Flow& f) {
  Json out = Json::array();
  for (int e = 0; e < net.edge_count(); ++e) {
    const Rational& q = f.amount[net.edge_arc(e)];
    if (q == 0) continue;
    const auto& edge = net.edges()[e];
    out.push_back(Json{{"buyer", "b" + std::to_string(edge.buyer + 1)},
                       {"good", "c" + std::to_string(edge.good + 1)},
                       {"amount", to_string(q)}});
  }
  return out;
}

inline Json certificate_json(const BalancednessCertificate& cert) {
  Json checks = Json::array();
  for (const auto& c : cert.checks) {
    Json entry{{"name", c.name}, {"passed", c.passed}};
    if (!c.detail.empty()) entry["detail"] = c.detail;
    checks.push_back(entry);
  }
  return Json{{"balanced", cert.is_balanced}, {"checks", checks}};
}

inline Json balanced_report(const EqualityNetwork& net, const std::string& source, const BalancedFlowResult& r,
                            double millis, const std::optional<BalancednessCertificate>& cert = std::nullopt) {
  Json out{{"instance", instance_json(net, source)},
           {"value", to_string(r.value)},
           {"surpluses", rationals_json(r.surpluses)},
           {"blocks", blocks_json(r.blocks)},
           {"breakpoints", rationals_json(r.profile.breakpoints)},
           {"move_lambda", move_lambda_json(net, r.profile)},
           {"flow", flow_json(net, r.flow)},
           {"calls", r.maxflow_calls},
           {"millis", millis}};
  if (cert) out["verification"] = certificate_json(*cert);
  return out;
}

inline Json breakpoints_report(const EqualityNetwork& net, const std::string& source, const BreakpointProfile& p,
                               double millis) {
  return Json{{"instance", instance_json(net, source)},
              {"breakpoints", rationals_json(p.breakpoints)},
              {"move_lambda", move_lambda_json(net, p)},
              {"calls", p.maxflow_calls},
              {"millis", millis}};
}

inline std::string join(const std::vector<std::string>& items, const std::string& sep = " ") {
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) out += (k ? sep : "") + items[k];
  return out;
}

inline std::string rationals_text(const std::vector<Rational>& values) {
  std::vector<std::string> parts;
  for (const auto& q : values) parts.push_back(to_string(q));
  return "[" + join(parts) + "]";
}

inline std::string balanced_text(const EqualityNetwork& net, const BalancedFlowResult& r) {
  std::ostringstream out;
  out << "value " << to_string(r.value) << "\n";
  out << "surpluses " << rationals_text(r.surpluses) << "\n";
  out << "breakpoints " << rationals_text(r.profile.breakpoints) << "\n";
  for (std::size_t b = 0; b < r.blocks.size(); ++b) {
    const Block& block = r.blocks[b];
    std::vector<std::string> members;
    for (int i : block.buyers) members.push_back("b" + std::to_string(i + 1));
    for (int j : block.goods) members.push_back("c" + std::to_string(j + 1));
    out << "block " << b + 1 << " surplus " << to_string(block.surplus) << ": "
        << (members.empty() ? std::string("(empty)") : join(members)) << "\n";
  }
  out << "flow\n";
  for (int e = 0; e < net.edge_count(); ++e) {
    const Rational& q = r.flow.amount[net.edge_arc(e)];
    if (q == 0) continue;
    out << "  b" << net.edges()[e].buyer + 1 << " -> c" << net.edges()[e].good + 1 << " " << to_string(q) << "\n";
  }
  out << "maxflow calls " << r.maxflow_calls << "\n";
  return out.str();
}

inline std::string breakpoints_text(const EqualityNetwork& net, const BreakpointProfile& p) {
  std::ostringstream out;
  for (int v = 1; v < net.sink_vertex(); ++v)
    out << vertex_name(net, v) << " " << to_string(p.move_lambda[v]) << "\n";
  out << "breakpoints " << rationals_text(p.breakpoints) << "\n";
  out << "maxflow calls " << p.maxflow_calls << "\n";
  return out.str();
}

}  // namespace eqflow
