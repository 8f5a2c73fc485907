#pragma once

// Brute-force minimum cuts for tiny networks: every subset of the inner
// vertices is tried as part of the source side.

#include "eqflow/network.hpp"

#include <stdexcept>
#include <vector>

namespace eqflow::oracle {

inline constexpr int kMaxExhaustiveInnerVertices = 16;

// All minimum-capacity s-t cuts. Cuts crossed by an infinite arc are never
// minimal here because {s} alone is finite for every network we build.
inline std::vector<Cut> enumerate_min_cuts(const FlowNetwork& fn) {
  std::vector<int> inner;
  for (int v = 0; v < fn.vertex_count(); ++v)
    if (v != fn.source() && v != fn.sink()) inner.push_back(v);
  if (static_cast<int>(inner.size()) > kMaxExhaustiveInnerVertices)
    throw std::length_error("enumerate_min_cuts: instance too large (" + std::to_string(inner.size()) +
                            " inner vertices)");

  std::vector<Cut> best;
  const unsigned subsets = 1u << inner.size();
  for (unsigned mask = 0; mask < subsets; ++mask) {
    std::vector<bool> side(fn.vertex_count(), false);
    side[fn.source()] = true;
    for (std::size_t k = 0; k < inner.size(); ++k)
      if (mask & (1u << k)) side[inner[k]] = true;
    Capacity cap = cut_capacity(fn, side);
    if (cap.is_infinite()) continue;
    if (best.empty() || cap < best.front().capacity) best.clear();
    if (best.empty() || cap == best.front().capacity) best.push_back(Cut{std::move(side), std::move(cap)});
  }
  return best;
}

// Minimum cut capacity by enumeration.
inline Rational min_cut_value(const FlowNetwork& fn) {
  const auto cuts = enumerate_min_cuts(fn);
  if (cuts.empty()) throw std::domain_error("min_cut_value: every cut is infinite");
  return cuts.front().capacity.value();
}

}  // namespace eqflow::oracle
