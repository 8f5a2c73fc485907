#pragma once

// Parametric equality network: source arcs carry max(0, e_i - lambda), all
// other capacities are fixed. Computes the lambda at which each vertex joins
// the source side of the minimum cut with smallest sink side.

#include "eqflow/maxflow.hpp"
#include "eqflow/network.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace eqflow {

struct ParametricNetwork {
  EqualityNetwork base;
  Rational lambda_max;  // max_i e_i; every source arc is 0 from here on
};

inline ParametricNetwork make_parametric(const EqualityNetwork& net) {
  return ParametricNetwork{net, *std::max_element(net.budgets().begin(), net.budgets().end())};
}

inline Rational clamped_source_capacity(const Rational& budget, const Rational& lambda) {
  return budget > lambda ? Rational(budget - lambda) : Rational(0);
}

inline FlowNetwork instantiate(const ParametricNetwork& pn, const Rational& lambda) {
  if (lambda < 0) throw std::invalid_argument("instantiate: negative lambda " + to_string(lambda));
  std::vector<Rational> caps;
  caps.reserve(pn.base.buyer_count());
  for (const auto& e : pn.base.budgets()) caps.push_back(clamped_source_capacity(e, lambda));
  return with_source_capacities(pn.base, caps);
}

// Repeated min-cut queries on one parametric network. Builds the scaled
// integer instance directly instead of going through a rational
// FlowNetwork; falls back to the generic solver when values get too wide.
class ParametricCutSolver {
 public:
  explicit ParametricCutSolver(const ParametricNetwork& pn) : pn_(pn) {
    for (const auto& e : pn.base.budgets()) scale_ = lcm(scale_, denominator(e));
    for (const auto& p : pn.base.prices()) scale_ = lcm(scale_, denominator(p));
    for (const auto& e : pn.base.budgets()) budgets_.push_back(numerator(e * Rational(scale_)));
    for (const auto& p : pn.base.prices()) prices_.push_back(numerator(p * Rational(scale_)));
  }

  ParametricCutSolver(ParametricNetwork&&) = delete;

  Cut min_sink_cut(const Rational& lambda) const {
    if (lambda < 0) throw std::invalid_argument("min_sink_cut_at: negative lambda " + to_string(lambda));
    const EqualityNetwork& net = pn_.base;
    const Integer scale = lcm(scale_, denominator(lambda));
    const Integer base_factor = scale / scale_;
    const Integer shift = numerator(lambda) * (scale / denominator(lambda));
    std::vector<Integer> source_caps;
    Integer total = 0;
    for (const auto& e : budgets_) {
      Integer c = e * base_factor - shift;
      if (c < 0) c = 0;
      total += c;
      source_caps.push_back(std::move(c));
    }
    std::vector<Integer> sink_caps;
    for (const auto& p : prices_) {
      sink_caps.push_back(p * base_factor);
      total += sink_caps.back();
    }
    if (total >= (Integer(1) << 60)) return min_sink_side_cut(instantiate(pn_, lambda));

    detail::PushRelabel<std::int64_t> solver(net.vertex_count(), net.source_vertex(), net.sink_vertex());
    for (int i = 0; i < net.buyer_count(); ++i)
      solver.add_arc(net.source_vertex(), net.buyer_vertex(i), static_cast<std::int64_t>(source_caps[i]));
    const std::int64_t surrogate = static_cast<std::int64_t>(total) + 1;
    for (const auto& e : net.edges()) solver.add_arc(net.buyer_vertex(e.buyer), net.good_vertex(e.good), surrogate);
    for (int j = 0; j < net.good_count(); ++j)
      solver.add_arc(net.good_vertex(j), net.sink_vertex(), static_cast<std::int64_t>(sink_caps[j]));
    const std::int64_t value = solver.run();
    return Cut{solver.cannot_reach_sink(), Capacity(Rational(Integer(value), scale))};
  }

 private:
  const ParametricNetwork& pn_;
  Integer scale_ = 1;
  std::vector<Integer> budgets_;
  std::vector<Integer> prices_;
};

// Minimum cut of smallest sink side at lambda.
inline Cut min_sink_cut_at(const ParametricNetwork& pn, const Rational& lambda) {
  return ParametricCutSolver(pn).min_sink_cut(lambda);
}

inline Rational kappa(const ParametricNetwork& pn, const Rational& lambda) {
  return min_sink_cut_at(pn, lambda).capacity.value();
}

// Capacity of one fixed cut as a function of lambda:
//   constant + sum over sink-side buyers j of max(0, e_j - lambda).
// Convex, non-increasing, kinks only at the e_j.
class CutCapacityFn {
 public:
  CutCapacityFn(Rational constant, std::vector<Rational> budgets)
      : constant_(std::move(constant)), budgets_(std::move(budgets)) {
    std::sort(budgets_.begin(), budgets_.end());
  }

  Rational operator()(const Rational& lambda) const {
    Rational total = constant_;
    for (const auto& e : budgets_) total += clamped_source_capacity(e, lambda);
    return total;
  }

  // Sorted distinct kink positions.
  std::vector<Rational> kinks() const {
    std::vector<Rational> out = budgets_;
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // Slope on the open segment just right of lambda.
  int slope_right_of(const Rational& lambda) const {
    int slope = 0;
    for (const auto& e : budgets_)
      if (e > lambda) --slope;
    return slope;
  }

  const Rational& constant() const { return constant_; }
  const std::vector<Rational>& budgets() const { return budgets_; }

 private:
  Rational constant_;
  std::vector<Rational> budgets_;
};

inline CutCapacityFn cut_capacity_function(const ParametricNetwork& pn, const Cut& cut) {
  const EqualityNetwork& net = pn.base;
  if (static_cast<int>(cut.source_side.size()) != net.vertex_count())
    throw std::invalid_argument("cut_capacity_function: cut does not match network");
  Rational constant = 0;
  std::vector<Rational> terms;
  for (int i = 0; i < net.buyer_count(); ++i)
    if (!cut.contains(net.buyer_vertex(i))) terms.push_back(net.budget(i));
  for (const auto& e : net.edges())
    if (cut.contains(net.buyer_vertex(e.buyer)) && !cut.contains(net.good_vertex(e.good)))
      throw std::invalid_argument("cut_capacity_function: infinite arc b" + std::to_string(e.buyer + 1) + "->c" +
                                  std::to_string(e.good + 1) + " crosses the cut");
  for (int j = 0; j < net.good_count(); ++j)
    if (cut.contains(net.good_vertex(j))) constant += net.price(j);
  return CutCapacityFn(std::move(constant), std::move(terms));
}

// Largest lambda in [lo, hi] where f and g agree, by an exact scan over the
// merged kink list. nullopt when f == g on the whole interval. Requires
// f - g to change sign (weakly) between lo and hi.
inline std::optional<Rational> intersect(const CutCapacityFn& f, const CutCapacityFn& g, const Rational& lo,
                                         const Rational& hi) {
  if (!(lo < hi)) throw std::invalid_argument("intersect: empty interval");
  auto diff = [&](const Rational& x) { return Rational(f(x) - g(x)); };
  const Rational d_lo = diff(lo), d_hi = diff(hi);
  if ((d_lo > 0 && d_hi > 0) || (d_lo < 0 && d_hi < 0))
    throw std::invalid_argument("intersect: functions do not cross on [" + to_string(lo) + ", " + to_string(hi) +
                                "]");
  std::vector<Rational> points{lo, hi};
  for (const auto* fn : {&f, &g})
    for (const auto& k : fn->kinks())
      if (k > lo && k < hi) points.push_back(k);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  bool identical = true;
  for (const auto& p : points)
    if (diff(p) != 0) identical = false;
  if (identical) return std::nullopt;

  for (std::size_t k = points.size() - 1; k > 0; --k) {
    const Rational& a = points[k - 1];
    const Rational& b = points[k];
    const Rational da = diff(a), db = diff(b);
    if (db == 0) return b;
    if (da == 0 || (da < 0) != (db < 0)) return Rational(a + da * (b - a) / (da - db));
  }
  throw std::logic_error("intersect: no crossing found despite sign change");
}

struct CutInterval {
  Rational lo;
  std::optional<Rational> hi;  // nullopt: unbounded above
  bool lo_closed = false;      // true for whichever entry covers lambda = 0
  Cut cut;                     // capacity evaluated at hi (or lambda_max when unbounded)
  CutCapacityFn capacity_fn;

  bool contains(const Rational& lambda) const {
    if (lo_closed ? lambda < lo : lambda <= lo) return false;
    return !hi || lambda <= *hi;
  }
};

struct BreakpointProfile {
  // Indexed by flow-network vertex; entries for s and t are unused (0).
  std::vector<Rational> move_lambda;
  // Membership in the minimum-sink-side cut at lambda = 0.
  std::vector<bool> source_side_at_zero;
  // Sorted distinct positive move values.
  std::vector<Rational> breakpoints;
  // The cut on [0,0] (if it differs from the next), (0, b_1], ..., (b_k, inf).
  std::vector<CutInterval> cut_at;
  int maxflow_calls = 0;

  const Cut& cut_for(const Rational& lambda) const {
    for (const auto& iv : cut_at)
      if (iv.contains(lambda)) return iv.cut;
    throw std::out_of_range("cut_for: lambda " + to_string(lambda) + " outside profile");
  }
};

// Cut lookup with call accounting and memoization by lambda.
class CutOracle {
 public:
  explicit CutOracle(const ParametricNetwork& pn) : pn_(pn), solver_(pn) {}
  CutOracle(ParametricNetwork&&) = delete;

  const Cut& at(const Rational& lambda) {
    auto it = memo_.find(lambda);
    if (it != memo_.end()) return it->second;
    Cut cut;
    if (lambda >= pn_.lambda_max) {
      // Every source arc is 0 and every good has a positive price: only s.
      const FlowNetwork fn = instantiate(pn_, lambda);
      std::vector<bool> side(fn.vertex_count(), false);
      side[fn.source()] = true;
      cut = make_cut(fn, std::move(side));
    } else {
      ++calls_;
      cut = solver_.min_sink_cut(lambda);
    }
    return memo_.emplace(lambda, std::move(cut)).first->second;
  }

  int calls() const { return calls_; }

 private:
  const ParametricNetwork& pn_;
  ParametricCutSolver solver_;
  std::map<Rational, Cut> memo_;
  int calls_ = 0;
};

namespace detail {

inline void sweep_interval(const ParametricNetwork& pn, CutOracle& oracle, const Rational& lo, const Cut& c_lo,
                           const Rational& hi, const Cut& c_hi, std::vector<Rational>& move) {
  if (c_lo.same_partition(c_hi)) return;
  const auto crossing =
      intersect(cut_capacity_function(pn, c_lo), cut_capacity_function(pn, c_hi), lo, hi);
  if (!crossing) throw std::logic_error("vertex_move_breakpoints: distinct cuts with identical capacity functions");
  const Rational lambda = *crossing;
  const Cut middle = oracle.at(lambda);
  if (middle.same_partition(c_lo)) {
    for (std::size_t v = 0; v < move.size(); ++v)
      if (c_lo.source_side[v] && !c_hi.source_side[v]) move[v] = lambda;
    return;
  }
  if (middle.same_partition(c_hi) || !c_hi.nested_in(middle) || !middle.nested_in(c_lo))
    throw std::logic_error("vertex_move_breakpoints: cut nesting violated at lambda " + to_string(lambda));
  sweep_interval(pn, oracle, lo, c_lo, lambda, middle, move);
  sweep_interval(pn, oracle, lambda, middle, hi, c_hi, move);
}

// Resolves the split points between indices a < b. Equal cuts at both ends
// pin every cut in between (nesting), so only ranges where the cut changes
// are subdivided.
inline void sweep_splits(const ParametricNetwork& pn, CutOracle& oracle, const std::vector<Rational>& split,
                         std::size_t a, const Cut& c_a, std::size_t b, const Cut& c_b, std::vector<Rational>& move) {
  if (c_a.same_partition(c_b)) return;
  if (b == a + 1) {
    sweep_interval(pn, oracle, split[a], c_a, split[b], c_b, move);
    return;
  }
  const std::size_t mid = a + (b - a) / 2;
  const Cut c_mid = oracle.at(split[mid]);
  sweep_splits(pn, oracle, split, a, c_a, mid, c_mid, move);
  sweep_splits(pn, oracle, split, mid, c_mid, b, c_b, move);
}

}  // namespace detail

// Builds the per-interval cuts from move values and the membership at 0.
inline std::vector<CutInterval> cut_intervals(const ParametricNetwork& pn, const std::vector<Rational>& move,
                                              const std::vector<bool>& at_zero,
                                              const std::vector<Rational>& breakpoints) {
  const FlowNetwork fn = to_flow_network(pn.base);
  auto side_above = [&](const Rational& bound) {
    std::vector<bool> side(fn.vertex_count(), false);
    side[fn.source()] = true;
    for (int v = 0; v < fn.vertex_count(); ++v)
      if (at_zero[v] && v != fn.source() && move[v] >= bound && bound > 0) side[v] = true;
    return side;
  };
  auto make_interval = [&](Rational lo, std::optional<Rational> hi, bool lo_closed, std::vector<bool> side) {
    const Rational eval_at = hi ? *hi : pn.lambda_max;
    Cut cut = make_cut(instantiate(pn, eval_at), std::move(side));
    CutCapacityFn fn_of_lambda = cut_capacity_function(pn, cut);
    return CutInterval{std::move(lo), std::move(hi), lo_closed, std::move(cut), std::move(fn_of_lambda)};
  };

  std::vector<CutInterval> out;
  const std::vector<bool> first_side = breakpoints.empty() ? side_above(pn.lambda_max) : side_above(breakpoints[0]);
  bool zero_covered = at_zero != first_side;
  if (zero_covered) out.push_back(make_interval(0, Rational(0), true, at_zero));
  Rational lo = 0;
  for (const auto& b : breakpoints) {
    out.push_back(make_interval(lo, b, !zero_covered, side_above(b)));
    zero_covered = true;
    lo = b;
  }
  std::vector<bool> only_source(fn.vertex_count(), false);
  only_source[fn.source()] = true;
  out.push_back(make_interval(lo, std::nullopt, !zero_covered, std::move(only_source)));
  return out;
}

// Vertex-move breakpoints by divide and conquer over nested minimum cuts.
// [0, lambda_max] is first split at the distinct budgets so that every cut
// capacity is linear on each piece (cuts at the split points are only
// computed where the cut is not already pinned by its neighbours); on a piece [lo, hi] with endpoint cuts
// C_lo != C_hi, the crossing lambda* of their capacity lines either still
// has C_lo as its cut (then everything in C_lo \ C_hi moves at lambda*) or
// yields a new cut strictly between them to recurse on.
inline BreakpointProfile vertex_move_breakpoints(const ParametricNetwork& pn) {
  CutOracle oracle(pn);
  const int n = pn.base.vertex_count();
  std::vector<Rational> split{Rational(0)};
  for (const auto& e : pn.base.budgets()) split.push_back(e);
  std::sort(split.begin(), split.end());
  split.erase(std::unique(split.begin(), split.end()), split.end());

  std::vector<Rational> move(n, Rational(0));
  detail::sweep_splits(pn, oracle, split, 0, oracle.at(split.front()), split.size() - 1, oracle.at(split.back()), move);

  BreakpointProfile profile;
  profile.source_side_at_zero = oracle.at(Rational(0)).source_side;
  for (int v = 0; v < n; ++v)
    if (move[v] > 0) profile.breakpoints.push_back(move[v]);
  std::sort(profile.breakpoints.begin(), profile.breakpoints.end());
  profile.breakpoints.erase(std::unique(profile.breakpoints.begin(), profile.breakpoints.end()),
                            profile.breakpoints.end());
  profile.move_lambda = std::move(move);
  profile.cut_at = cut_intervals(pn, profile.move_lambda, profile.source_side_at_zero, profile.breakpoints);
  profile.maxflow_calls = oracle.calls();
  return profile;
}

// Maximum number of max-flow computations vertex_move_breakpoints may use.
inline int breakpoint_call_budget(const EqualityNetwork& net) {
  std::vector<Rational> distinct = net.budgets();
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  return 2 * (net.buyer_count() + static_cast<int>(distinct.size())) + 2;
}

}  // namespace eqflow
