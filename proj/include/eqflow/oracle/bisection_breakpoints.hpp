#pragma once

// Independent breakpoint computation: every vertex's move value is located by
// bisection on lambda, using membership in the minimum-sink-side cut as a
// monotone predicate, and then snapped to the unique rational of bounded
// denominator inside the final bracket. Queries are shared between vertices
// whose brackets coincide, so each lambda is solved at most once; the cost of
// running every buyer's search on its own is reported alongside.

#include "eqflow/parametric.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace eqflow::oracle {

namespace detail {

// Rational close to the centre of [lo, hi] with denominator about 16/width,
// so that max-flow capacities stay small.
inline Rational near_midpoint(const Rational& lo, const Rational& hi) {
  const Rational width = hi - lo;
  const Integer q = ceil(Rational(16) / width);
  const Rational centre = (lo + hi) / 2;
  const Integer k = floor(centre * Rational(q) + Rational(1, 2));
  return Rational(k, q);
}

struct Bisection {
  const ParametricNetwork& pn;
  CutOracle& cuts;
  Rational resolution;  // stop once hi - lo < resolution
  std::vector<Rational>& move;
  std::vector<int>& depth;  // queries on each vertex's own search path

  // Every vertex in `members` is on the source side at lo and not at hi.
  void run(const Rational& lo, const Rational& hi, const std::vector<int>& members) {
    if (members.empty()) return;
    if (hi - lo < resolution) {
      const Rational snapped = simplest_between(lo, hi);
      for (int v : members) move[v] = snapped;
      return;
    }
    const Rational mid = near_midpoint(lo, hi);
    const Cut& cut = cuts.at(mid);
    const bool solved = mid < pn.lambda_max;
    std::vector<int> above, below;
    for (int v : members) {
      if (solved) ++depth[v];
      (cut.contains(v) ? above : below).push_back(v);
    }
    run(lo, mid, below);
    run(mid, hi, above);
  }
};

}  // namespace detail

// Bound on the denominators of all move values: buyer_count times the lcm of
// the input denominators.
inline Integer breakpoint_denominator_bound(const EqualityNetwork& net) {
  Integer scale = 1;
  for (const auto& e : net.budgets()) scale = lcm(scale, denominator(e));
  for (const auto& p : net.prices()) scale = lcm(scale, denominator(p));
  return Integer(net.buyer_count()) * scale;
}

struct BisectionStats {
  int shared_calls = 0;           // max-flow solves actually performed
  long long per_buyer_calls = 0;  // solves if each buyer were bisected on its own
};

inline BreakpointProfile breakpoints_oracle(const ParametricNetwork& pn, BisectionStats* stats = nullptr) {
  const Integer bound = breakpoint_denominator_bound(pn.base);
  if (bound > (Integer(1) << 24))
    throw std::length_error("breakpoints_oracle: denominator bound " + bound.str() + " too large");
  const Rational resolution = Rational(1) / Rational(2 * bound * bound);

  CutOracle cuts(pn);
  const int n = pn.base.vertex_count();
  std::vector<Rational> move(n, Rational(0));
  const Cut at_zero = cuts.at(Rational(0));
  std::vector<int> members;
  for (int v = 0; v < n; ++v)
    if (v != pn.base.source_vertex() && v != pn.base.sink_vertex() && at_zero.contains(v)) members.push_back(v);

  std::vector<int> depth(n, 0);
  detail::Bisection bisection{pn, cuts, resolution, move, depth};
  bisection.run(Rational(0), pn.lambda_max, members);
  if (stats) {
    stats->shared_calls = cuts.calls();
    stats->per_buyer_calls = 0;
    for (int i = 0; i < pn.base.buyer_count(); ++i) stats->per_buyer_calls += 1 + depth[pn.base.buyer_vertex(i)];
  }

  BreakpointProfile profile;
  profile.source_side_at_zero = at_zero.source_side;
  for (const auto& x : move)
    if (x > 0) profile.breakpoints.push_back(x);
  std::sort(profile.breakpoints.begin(), profile.breakpoints.end());
  profile.breakpoints.erase(std::unique(profile.breakpoints.begin(), profile.breakpoints.end()),
                            profile.breakpoints.end());
  profile.move_lambda = std::move(move);
  profile.cut_at = cut_intervals(pn, profile.move_lambda, profile.source_side_at_zero, profile.breakpoints);
  profile.maxflow_calls = cuts.calls();
  return profile;
}

}  // namespace eqflow::oracle
