#pragma once

// Exact maximum flow by highest-label push-relabel with the gap heuristic and
// periodic global relabeling, plus min-cut extraction and certification.
//
// Infinite arcs are run with the finite surrogate (sum of finite capacities
// + 1). Every finite cut is cheaper than the surrogate, so optimal flows and
// minimum cuts are unchanged, and the surrogate never appears in results.
// When all finite capacities scale to integers that fit comfortably in 64
// bits the solver runs on int64; otherwise it runs on exact rationals.

#include "eqflow/network.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqflow {

struct FlowResult {
  Flow flow;
  Rational value;
};

struct CertificateReport {
  bool feasible = false;
  std::vector<std::string> conservation_violations;
  std::vector<std::string> capacity_violations;
  // Capacity of a minimum cut minus the flow value.
  Rational duality_gap;
};

namespace detail {

template <typename Number>
class PushRelabel {
 public:
  PushRelabel(int vertex_count, int source, int sink) : n_(vertex_count), s_(source), t_(sink) {}

  // Returns the index of the forward arc.
  int add_arc(int tail, int head, Number capacity) {
    tails_.push_back(tail);
    heads_.push_back(head);
    caps_.push_back(std::move(capacity));
    return static_cast<int>(tails_.size()) - 1;
  }

  Number run() {
    build();
    height_.assign(n_, 0);
    excess_.assign(n_, Number(0));
    count_.assign(2 * n_ + 2, 0);
    height_[s_] = n_;
    for (int a = first_[s_]; a < first_[s_ + 1]; ++a) {
      if (res_[a] > 0) {
        const int v = head_[a];
        excess_[v] += res_[a];
        excess_[s_] -= res_[a];
        res_[rev_[a]] += res_[a];
        res_[a] = 0;
      }
    }
    global_relabel();
    while (highest_ >= 0) {
      if (buckets_[highest_].empty()) {
        --highest_;
        continue;
      }
      const int u = buckets_[highest_].back();
      buckets_[highest_].pop_back();
      if (!(excess_[u] > 0)) continue;
      if (height_[u] != highest_) {
        activate(u);
        continue;
      }
      discharge(u);
      if (relabels_since_global_ >= n_) global_relabel();
    }
    return excess_[t_];
  }

  Number flow_on(int arc) const { return caps_[arc] - res_[position_[arc]]; }

  // Vertices from which t is unreachable in the final residual graph.
  std::vector<bool> cannot_reach_sink() const {
    std::vector<bool> reach(n_, false);
    std::vector<int> queue{t_};
    reach[t_] = true;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const int v = queue[q];
      for (int a = first_[v]; a < first_[v + 1]; ++a) {
        const int u = head_[a];
        if (!reach[u] && res_[rev_[a]] > 0) {
          reach[u] = true;
          queue.push_back(u);
        }
      }
    }
    reach.flip();
    return reach;
  }

 private:
  void build() {
    const int m = static_cast<int>(tails_.size());
    first_.assign(n_ + 1, 0);
    for (int a = 0; a < m; ++a) {
      ++first_[tails_[a] + 1];
      ++first_[heads_[a] + 1];
    }
    for (int v = 0; v < n_; ++v) first_[v + 1] += first_[v];
    std::vector<int> fill(first_.begin(), first_.end() - 1);
    head_.assign(2 * m, 0);
    rev_.assign(2 * m, 0);
    res_.assign(2 * m, Number(0));
    position_.assign(m, 0);
    for (int a = 0; a < m; ++a) {
      const int fwd = fill[tails_[a]]++;
      const int bwd = fill[heads_[a]]++;
      head_[fwd] = heads_[a];
      head_[bwd] = tails_[a];
      rev_[fwd] = bwd;
      rev_[bwd] = fwd;
      res_[fwd] = caps_[a];
      position_[a] = fwd;
    }
    current_.assign(first_.begin(), first_.end() - 1);
    buckets_.assign(2 * n_ + 2, {});
  }

  void activate(int v) {
    const int h = height_[v];
    if (h >= static_cast<int>(buckets_.size())) return;
    buckets_[h].push_back(v);
    highest_ = std::max(highest_, h);
  }

  // Exact distance labels: to t where possible, else n + distance to s.
  void global_relabel() {
    relabels_since_global_ = 0;
    const int unreached = 2 * n_;
    for (int v = 0; v < n_; ++v) height_[v] = unreached;
    auto bfs = [&](int root, int base) {
      height_[root] = base;
      std::vector<int> queue{root};
      for (std::size_t q = 0; q < queue.size(); ++q) {
        const int v = queue[q];
        for (int a = first_[v]; a < first_[v + 1]; ++a) {
          const int u = head_[a];
          if (height_[u] == unreached && u != s_ && u != t_ && res_[rev_[a]] > 0) {
            height_[u] = height_[v] + 1;
            queue.push_back(u);
          }
        }
      }
    };
    bfs(t_, 0);
    bfs(s_, n_);
    std::fill(count_.begin(), count_.end(), 0);
    for (auto& b : buckets_) b.clear();
    highest_ = -1;
    for (int v = 0; v < n_; ++v) {
      if (height_[v] < n_) ++count_[height_[v]];
      current_[v] = first_[v];
      if (v != s_ && v != t_ && excess_[v] > 0) activate(v);
    }
  }

  void discharge(int u) {
    while (excess_[u] > 0) {
      if (current_[u] == first_[u + 1]) {
        relabel(u);
        if (height_[u] >= 2 * n_) return;
        continue;
      }
      const int a = current_[u];
      const int v = head_[a];
      if (res_[a] > 0 && height_[u] == height_[v] + 1) {
        Number delta = excess_[u] < res_[a] ? excess_[u] : res_[a];
        const bool was_idle = !(excess_[v] > 0);
        res_[a] -= delta;
        res_[rev_[a]] += delta;
        excess_[u] -= delta;
        excess_[v] += delta;
        if (was_idle && v != s_ && v != t_) activate(v);
      } else {
        ++current_[u];
      }
    }
  }

  void relabel(int u) {
    ++relabels_since_global_;
    const int old = height_[u];
    int next = 2 * n_;
    for (int a = first_[u]; a < first_[u + 1]; ++a)
      if (res_[a] > 0) next = std::min(next, height_[head_[a]] + 1);
    current_[u] = first_[u];
    if (old < n_ && --count_[old] == 0) {
      // Gap: nothing between old and n can reach t any more.
      for (int v = 0; v < n_; ++v) {
        if (v != s_ && v != u && height_[v] > old && height_[v] < n_) {
          --count_[height_[v]];
          height_[v] = n_ + 1;
          current_[v] = first_[v];
        }
      }
      height_[u] = std::max(next, n_ + 1);
      return;
    }
    height_[u] = next;
    if (next < n_) ++count_[next];
  }

  int n_, s_, t_;
  std::vector<int> tails_, heads_;
  std::vector<Number> caps_;

  std::vector<int> first_, head_, rev_, position_, current_, height_, count_;
  std::vector<Number> res_, excess_;
  std::vector<std::vector<int>> buckets_;
  int highest_ = -1;
  int relabels_since_global_ = 0;
};

struct Solution {
  std::optional<Flow> flow;
  Rational value;
  std::vector<bool> source_side;  // minimum cut with smallest sink side
};

template <typename Number, typename Convert, typename Back>
Solution solve_with(const FlowNetwork& fn, const Number& surrogate, Convert to_number, Back to_rational,
                    bool want_flow) {
  PushRelabel<Number> solver(fn.vertex_count(), fn.source(), fn.sink());
  for (const auto& a : fn.arcs())
    solver.add_arc(a.tail, a.head, a.capacity.is_infinite() ? surrogate : to_number(a.capacity.value()));
  Solution out;
  out.value = to_rational(solver.run());
  out.source_side = solver.cannot_reach_sink();
  if (want_flow) {
    Flow f;
    f.amount.reserve(fn.arc_count());
    for (int k = 0; k < fn.arc_count(); ++k) f.amount.push_back(to_rational(solver.flow_on(k)));
    f.value = out.value;
    out.flow = std::move(f);
  }
  return out;
}

inline Solution solve(const FlowNetwork& fn, bool want_flow, bool force_rational = false) {
  Integer scale = 1;
  for (const auto& a : fn.arcs())
    if (a.capacity.is_finite()) scale = lcm(scale, denominator(a.capacity.value()));
  const Rational total = fn.finite_capacity_total();
  const Integer scaled_total = numerator(total * Rational(scale));
  // Excesses never exceed total + surrogate; keep a wide margin below 2^63.
  const Integer limit = Integer(1) << 60;
  if (!force_rational && scaled_total < limit) {
    const std::int64_t surrogate = static_cast<std::int64_t>(scaled_total) + 1;
    return solve_with<std::int64_t>(
        fn, surrogate,
        [&](const Rational& q) { return static_cast<std::int64_t>(numerator(q) * (scale / denominator(q))); },
        [&](std::int64_t x) { return Rational(Integer(x), scale); }, want_flow);
  }
  return solve_with<Rational>(
      fn, total + 1, [](const Rational& q) { return q; }, [](const Rational& q) { return q; }, want_flow);
}

}  // namespace detail

// Maximum flow of fn. Deterministic for the canonical arc order.
inline FlowResult max_flow(const FlowNetwork& fn) {
  detail::Solution sol = detail::solve(fn, true);
  return FlowResult{std::move(*sol.flow), sol.value};
}

// Same as max_flow but always runs on exact rationals (used to cross-check
// the scaled integer path).
inline FlowResult max_flow_rational(const FlowNetwork& fn) {
  detail::Solution sol = detail::solve(fn, true, true);
  return FlowResult{std::move(*sol.flow), sol.value};
}

// Max-flow value together with the minimum cut of smallest sink side, without
// materializing the per-arc flow.
inline Cut min_sink_side_cut(const FlowNetwork& fn) {
  detail::Solution sol = detail::solve(fn, false);
  Cut cut = make_cut(fn, std::move(sol.source_side));
  if (!(cut.capacity == Capacity(sol.value)))
    throw std::logic_error("min_sink_side_cut: cut capacity differs from flow value");
  return cut;
}

// Source side = vertices that cannot reach t in the residual graph of f.
// Throws if f is not a maximum flow (cut capacity != flow value).
inline Cut min_sink_side_cut(const FlowNetwork& fn, const FlowResult& f) {
  const int n = fn.vertex_count();
  // Residual u->v exists for arc (u,v) with spare capacity, and for the
  // reverse of any arc carrying flow.
  std::vector<std::vector<int>> residual_into(n);
  for (int k = 0; k < fn.arc_count(); ++k) {
    const Arc& a = fn.arc(k);
    const Rational& x = f.flow.amount.at(k);
    if (a.capacity.is_infinite() || x < a.capacity.value()) residual_into[a.head].push_back(a.tail);
    if (x > 0) residual_into[a.tail].push_back(a.head);
  }
  std::vector<bool> reach(n, false);
  std::vector<int> queue{fn.sink()};
  reach[fn.sink()] = true;
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (int u : residual_into[queue[q]])
      if (!reach[u]) {
        reach[u] = true;
        queue.push_back(u);
      }
  if (reach[fn.source()]) throw std::invalid_argument("min_sink_side_cut: flow admits an augmenting path");
  reach.flip();
  Cut cut = make_cut(fn, std::move(reach));
  if (!(cut.capacity == Capacity(f.value)))
    throw std::invalid_argument("min_sink_side_cut: duality check failed (cut " + to_string(cut.capacity) +
                                ", flow " + to_string(f.value) + ")");
  return cut;
}

inline CertificateReport check_flow(const FlowNetwork& fn, const Flow& f) {
  CertificateReport report;
  FlowViolations v = flow_violations(fn, f);
  report.feasible = v.feasible();
  report.capacity_violations = std::move(v.capacity);
  report.conservation_violations = std::move(v.conservation);
  const Cut cut = min_sink_side_cut(fn);
  report.duality_gap = cut.capacity.value() - f.value;
  return report;
}

}  // namespace eqflow
