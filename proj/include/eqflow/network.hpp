#pragma once

#include "eqflow/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace eqflow {

enum class NetworkErrorKind {
  kSyntax,
  kNonPositiveBudget,
  kNonPositivePrice,
  kIsolatedBuyer,
  kIsolatedGood,
  kDuplicateEdge,
  kIndexOutOfRange,
  kMissingDeclaration,
  kDuplicateDeclaration,
};

inline const char* to_string(NetworkErrorKind kind) {
  switch (kind) {
    case NetworkErrorKind::kSyntax: return "syntax error";
    case NetworkErrorKind::kNonPositiveBudget: return "non-positive budget";
    case NetworkErrorKind::kNonPositivePrice: return "non-positive price";
    case NetworkErrorKind::kIsolatedBuyer: return "isolated buyer";
    case NetworkErrorKind::kIsolatedGood: return "isolated good";
    case NetworkErrorKind::kDuplicateEdge: return "duplicate edge";
    case NetworkErrorKind::kIndexOutOfRange: return "index out of range";
    case NetworkErrorKind::kMissingDeclaration: return "missing declaration";
    case NetworkErrorKind::kDuplicateDeclaration: return "duplicate declaration";
  }
  return "unknown error";
}

// Raised for invalid equality networks, both from the validating constructor
// and from the text parser. line/column are 1-based, 0 when not applicable.
class NetworkError : public std::runtime_error {
 public:
  NetworkError(NetworkErrorKind kind, const std::string& detail, int line = 0, int column = 0)
      : std::runtime_error(format(kind, detail, line, column)), kind_(kind), line_(line), column_(column) {}

  NetworkErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(NetworkErrorKind kind, const std::string& detail, int line, int column) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ", column " + std::to_string(column) + ": ";
    out += to_string(kind);
    if (!detail.empty()) out += ": " + detail;
    return out;
  }

  NetworkErrorKind kind_;
  int line_;
  int column_;
};

// 0-based buyer/good pair.
struct EqualityEdge {
  int buyer;
  int good;
  friend auto operator<=>(const EqualityEdge&, const EqualityEdge&) = default;
};

// Bipartite market network: buyers with budgets, goods with prices, and the
// equality edges between them. Immutable once constructed; the constructor
// enforces positivity, in-range indices, no duplicates and no isolated vertex.
class EqualityNetwork {
 public:
  EqualityNetwork(std::vector<Rational> budgets, std::vector<Rational> prices, std::vector<EqualityEdge> edges)
      : budgets_(std::move(budgets)), prices_(std::move(prices)), edges_(std::move(edges)) {
    validate();
  }

  int buyer_count() const { return static_cast<int>(budgets_.size()); }
  int good_count() const { return static_cast<int>(prices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::vector<Rational>& budgets() const { return budgets_; }
  const std::vector<Rational>& prices() const { return prices_; }
  // Sorted by (buyer, good).
  const std::vector<EqualityEdge>& edges() const { return edges_; }

  const Rational& budget(int buyer) const { return budgets_.at(buyer); }
  const Rational& price(int good) const { return prices_.at(good); }

  Rational total_budget() const { return std::accumulate(budgets_.begin(), budgets_.end(), Rational(0)); }
  Rational total_price() const { return std::accumulate(prices_.begin(), prices_.end(), Rational(0)); }

  // Vertex layout of the flow network: s, b_1..b_n, c_1..c_k, t.
  int source_vertex() const { return 0; }
  int buyer_vertex(int buyer) const { return 1 + buyer; }
  int good_vertex(int good) const { return 1 + buyer_count() + good; }
  int sink_vertex() const { return 1 + buyer_count() + good_count(); }
  int vertex_count() const { return 2 + buyer_count() + good_count(); }

  // Arc layout of to_flow_network (matches canonical arc order).
  int source_arc(int buyer) const { return buyer; }
  int edge_arc(int edge) const { return buyer_count() + edge; }
  int sink_arc(int good) const { return buyer_count() + edge_count() + good; }

  // Index of (buyer, good) in edges(), or -1.
  int find_edge(int buyer, int good) const {
    const EqualityEdge key{buyer, good};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    return it != edges_.end() && *it == key ? static_cast<int>(it - edges_.begin()) : -1;
  }

  friend bool operator==(const EqualityNetwork&, const EqualityNetwork&) = default;

 private:
  void validate() {
    using K = NetworkErrorKind;
    if (budgets_.empty()) throw NetworkError(K::kMissingDeclaration, "at least one buyer required");
    if (prices_.empty()) throw NetworkError(K::kMissingDeclaration, "at least one good required");
    for (std::size_t i = 0; i < budgets_.size(); ++i)
      if (budgets_[i] <= 0)
        throw NetworkError(K::kNonPositiveBudget, "buyer " + std::to_string(i + 1) + " budget " + to_string(budgets_[i]));
    for (std::size_t j = 0; j < prices_.size(); ++j)
      if (prices_[j] <= 0)
        throw NetworkError(K::kNonPositivePrice, "good " + std::to_string(j + 1) + " price " + to_string(prices_[j]));
    for (const auto& e : edges_) {
      if (e.buyer < 0 || e.buyer >= buyer_count() || e.good < 0 || e.good >= good_count())
        throw NetworkError(K::kIndexOutOfRange,
                           "edge " + std::to_string(e.buyer + 1) + " " + std::to_string(e.good + 1));
    }
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t k = 1; k < edges_.size(); ++k)
      if (edges_[k] == edges_[k - 1])
        throw NetworkError(K::kDuplicateEdge,
                           "edge " + std::to_string(edges_[k].buyer + 1) + " " + std::to_string(edges_[k].good + 1));
    std::vector<char> buyer_seen(budgets_.size(), 0), good_seen(prices_.size(), 0);
    for (const auto& e : edges_) buyer_seen[e.buyer] = good_seen[e.good] = 1;
    for (std::size_t i = 0; i < buyer_seen.size(); ++i)
      if (!buyer_seen[i]) throw NetworkError(K::kIsolatedBuyer, "buyer " + std::to_string(i + 1));
    for (std::size_t j = 0; j < good_seen.size(); ++j)
      if (!good_seen[j]) throw NetworkError(K::kIsolatedGood, "good " + std::to_string(j + 1));
  }

  std::vector<Rational> budgets_;
  std::vector<Rational> prices_;
  std::vector<EqualityEdge> edges_;
};

enum class VertexRole { kSource, kSink, kBuyer, kGood, kOther };

struct Arc {
  int tail;
  int head;
  Capacity capacity;
};

// General s-t network. Arcs are kept sorted by (tail, head, capacity) so that
// every algorithm sees the same order regardless of construction order.
class FlowNetwork {
 public:
  FlowNetwork(int vertex_count, int source, int sink, std::vector<Arc> arcs, std::vector<VertexRole> roles = {},
              std::vector<std::string> labels = {})
      : vertex_count_(vertex_count),
        source_(source),
        sink_(sink),
        arcs_(std::move(arcs)),
        roles_(std::move(roles)),
        labels_(std::move(labels)) {
    if (vertex_count_ < 2 || source_ < 0 || source_ >= vertex_count_ || sink_ < 0 || sink_ >= vertex_count_ ||
        source_ == sink_)
      throw std::invalid_argument("FlowNetwork: bad vertex count or terminals");
    for (const auto& a : arcs_) {
      if (a.tail < 0 || a.tail >= vertex_count_ || a.head < 0 || a.head >= vertex_count_ || a.tail == a.head)
        throw std::invalid_argument("FlowNetwork: bad arc endpoints");
      if (a.head == source_) throw std::invalid_argument("FlowNetwork: arc into source");
      if (a.tail == sink_) throw std::invalid_argument("FlowNetwork: arc out of sink");
    }
    std::stable_sort(arcs_.begin(), arcs_.end(), [](const Arc& x, const Arc& y) {
      if (x.tail != y.tail) return x.tail < y.tail;
      if (x.head != y.head) return x.head < y.head;
      return x.capacity < y.capacity;
    });
    if (roles_.empty()) {
      roles_.assign(vertex_count_, VertexRole::kOther);
      roles_[source_] = VertexRole::kSource;
      roles_[sink_] = VertexRole::kSink;
    }
    if (labels_.empty()) {
      for (int v = 0; v < vertex_count_; ++v)
        labels_.push_back(v == source_ ? "s" : v == sink_ ? "t" : "v" + std::to_string(v));
    }
    if (static_cast<int>(roles_.size()) != vertex_count_ || static_cast<int>(labels_.size()) != vertex_count_)
      throw std::invalid_argument("FlowNetwork: roles/labels size mismatch");
  }

  int vertex_count() const { return vertex_count_; }
  int source() const { return source_; }
  int sink() const { return sink_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(int index) const { return arcs_.at(index); }
  VertexRole role(int v) const { return roles_.at(v); }
  const std::string& label(int v) const { return labels_.at(v); }

  // Sum of all finite capacities.
  Rational finite_capacity_total() const {
    Rational total = 0;
    for (const auto& a : arcs_)
      if (a.capacity.is_finite()) total += a.capacity.value();
    return total;
  }

 private:
  int vertex_count_;
  int source_;
  int sink_;
  std::vector<Arc> arcs_;
  std::vector<VertexRole> roles_;
  std::vector<std::string> labels_;
};

// amount[k] is the flow on fn.arcs()[k]; value is the net outflow of s.
struct Flow {
  std::vector<Rational> amount;
  Rational value;
};

// An s-t cut given by its source side. capacity is the total capacity of
// arcs leaving the source side.
struct Cut {
  std::vector<bool> source_side;
  Capacity capacity;

  bool contains(int v) const { return source_side.at(v); }

  std::vector<int> source_vertices() const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(source_side.size()); ++v)
      if (source_side[v]) out.push_back(v);
    return out;
  }

  bool same_partition(const Cut& other) const { return source_side == other.source_side; }

  // True when this source side is contained in the other's.
  bool nested_in(const Cut& other) const {
    for (std::size_t v = 0; v < source_side.size(); ++v)
      if (source_side[v] && !other.source_side[v]) return false;
    return true;
  }

  friend bool operator==(const Cut&, const Cut&) = default;
};

inline Capacity cut_capacity(const FlowNetwork& fn, const std::vector<bool>& source_side) {
  Capacity total(0);
  for (const auto& a : fn.arcs())
    if (source_side[a.tail] && !source_side[a.head]) total += a.capacity;
  return total;
}

inline Cut make_cut(const FlowNetwork& fn, std::vector<bool> source_side) {
  if (static_cast<int>(source_side.size()) != fn.vertex_count() || !source_side[fn.source()] ||
      source_side[fn.sink()])
    throw std::invalid_argument("make_cut: source side must contain s and exclude t");
  Capacity capacity = cut_capacity(fn, source_side);
  return Cut{std::move(source_side), std::move(capacity)};
}

inline std::string describe_source_side(const FlowNetwork& fn, const Cut& cut) {
  std::string out = "{";
  for (int v : cut.source_vertices()) {
    if (out.size() > 1) out += ",";
    out += fn.label(v);
  }
  return out + "}";
}

struct FlowViolations {
  std::vector<std::string> capacity;
  std::vector<std::string> conservation;
  bool feasible() const { return capacity.empty() && conservation.empty(); }
};

// Exact feasibility check: 0 <= amount <= capacity per arc and conservation
// at every vertex other than s and t.
inline FlowViolations flow_violations(const FlowNetwork& fn, const Flow& f) {
  FlowViolations out;
  if (static_cast<int>(f.amount.size()) != fn.arc_count()) {
    out.capacity.push_back("flow has " + std::to_string(f.amount.size()) + " arc amounts, network has " +
                           std::to_string(fn.arc_count()) + " arcs");
    return out;
  }
  std::vector<Rational> balance(fn.vertex_count(), Rational(0));
  for (int k = 0; k < fn.arc_count(); ++k) {
    const Arc& a = fn.arc(k);
    const Rational& x = f.amount[k];
    if (x < 0 || (a.capacity.is_finite() && x > a.capacity.value()))
      out.capacity.push_back(fn.label(a.tail) + "->" + fn.label(a.head) + " carries " + to_string(x) +
                             " (capacity " + to_string(a.capacity) + ")");
    balance[a.tail] -= x;
    balance[a.head] += x;
  }
  for (int v = 0; v < fn.vertex_count(); ++v)
    if (v != fn.source() && v != fn.sink() && balance[v] != 0)
      out.conservation.push_back(fn.label(v) + " imbalance " + to_string(balance[v]));
  if (-balance[fn.source()] != f.value)
    out.conservation.push_back("declared value " + to_string(f.value) + " differs from net outflow of s " +
                               to_string(Rational(-balance[fn.source()])));
  return out;
}

// The plain network N: s->b_i with capacity e_i, b_i->c_j infinite for each
// equality edge, c_j->t with capacity p_j.
inline FlowNetwork to_flow_network(const EqualityNetwork& net) {
  const int n = net.buyer_count(), k = net.good_count();
  std::vector<Arc> arcs;
  arcs.reserve(n + net.edge_count() + k);
  for (int i = 0; i < n; ++i) arcs.push_back({net.source_vertex(), net.buyer_vertex(i), Capacity(net.budget(i))});
  for (const auto& e : net.edges())
    arcs.push_back({net.buyer_vertex(e.buyer), net.good_vertex(e.good), Capacity::infinite()});
  for (int j = 0; j < k; ++j) arcs.push_back({net.good_vertex(j), net.sink_vertex(), Capacity(net.price(j))});

  std::vector<VertexRole> roles(net.vertex_count(), VertexRole::kOther);
  std::vector<std::string> labels(net.vertex_count());
  roles[net.source_vertex()] = VertexRole::kSource;
  labels[net.source_vertex()] = "s";
  roles[net.sink_vertex()] = VertexRole::kSink;
  labels[net.sink_vertex()] = "t";
  for (int i = 0; i < n; ++i) {
    roles[net.buyer_vertex(i)] = VertexRole::kBuyer;
    labels[net.buyer_vertex(i)] = "b" + std::to_string(i + 1);
  }
  for (int j = 0; j < k; ++j) {
    roles[net.good_vertex(j)] = VertexRole::kGood;
    labels[net.good_vertex(j)] = "c" + std::to_string(j + 1);
  }
  return FlowNetwork(net.vertex_count(), net.source_vertex(), net.sink_vertex(), std::move(arcs), std::move(roles),
                     std::move(labels));
}

// Copy of N with replaced source-arc capacities (one per buyer).
inline FlowNetwork with_source_capacities(const EqualityNetwork& net, const std::vector<Rational>& caps) {
  if (static_cast<int>(caps.size()) != net.buyer_count())
    throw std::invalid_argument("with_source_capacities: one capacity per buyer required");
  FlowNetwork base = to_flow_network(net);
  std::vector<Arc> arcs = base.arcs();
  std::vector<VertexRole> roles;
  std::vector<std::string> labels;
  for (int v = 0; v < base.vertex_count(); ++v) {
    roles.push_back(base.role(v));
    labels.push_back(base.label(v));
  }
  for (int i = 0; i < net.buyer_count(); ++i) arcs[net.source_arc(i)].capacity = Capacity(caps[i]);
  return FlowNetwork(base.vertex_count(), base.source(), base.sink(), std::move(arcs), std::move(roles),
                     std::move(labels));
}

// Builds a flow on to_flow_network(net) from per-edge buyer->good amounts;
// the source and sink arcs carry the induced totals.
inline Flow flow_from_edge_amounts(const EqualityNetwork& net, const std::vector<Rational>& edge_amount) {
  if (static_cast<int>(edge_amount.size()) != net.edge_count())
    throw std::invalid_argument("flow_from_edge_amounts: one amount per edge required");
  Flow f;
  f.amount.assign(net.buyer_count() + net.edge_count() + net.good_count(), Rational(0));
  for (int e = 0; e < net.edge_count(); ++e) {
    const auto& edge = net.edges()[e];
    f.amount[net.edge_arc(e)] = edge_amount[e];
    f.amount[net.source_arc(edge.buyer)] += edge_amount[e];
    f.amount[net.sink_arc(edge.good)] += edge_amount[e];
  }
  f.value = 0;
  for (int i = 0; i < net.buyer_count(); ++i) f.value += f.amount[net.source_arc(i)];
  return f;
}

// r(b_i) = e_i - flow(s->b_i). The flow must be feasible on N.
inline std::vector<Rational> surpluses(const EqualityNetwork& net, const Flow& f) {
  const FlowViolations v = flow_violations(to_flow_network(net), f);
  if (!v.feasible())
    throw std::invalid_argument("surpluses: infeasible flow (" +
                                (v.capacity.empty() ? v.conservation.front() : v.capacity.front()) + ")");
  std::vector<Rational> r;
  r.reserve(net.buyer_count());
  for (int i = 0; i < net.buyer_count(); ++i) r.push_back(net.budget(i) - f.amount[net.source_arc(i)]);
  return r;
}

inline Rational squared_surplus_norm(const std::vector<Rational>& r) {
  Rational total = 0;
  for (const auto& x : r) total += x * x;
  return total;
}

}  // namespace eqflow
