#pragma once

#include "eqflow/eqnet_io.hpp"

#include <string>

namespace eqflow::fixtures {

inline const char* kFixA =
    "eqnet 1\n"
    "buyers 1\n"
    "goods 1\n"
    "budget 1 2\n"
    "price 1 2\n"
    "edge 1 1\n";

inline const char* kFixB =
    "eqnet 1\n"
    "buyers 2\n"
    "goods 2\n"
    "budget 1 3\n"
    "budget 2 3\n"
    "price 1 2\n"
    "price 2 2\n"
    "edge 1 1\n"
    "edge 2 1\n"
    "edge 2 2\n";

inline const char* kFixC =
    "eqnet 1\n"
    "buyers 2\n"
    "goods 2\n"
    "budget 1 5\n"
    "budget 2 1\n"
    "price 1 2\n"
    "price 2 2\n"
    "edge 1 1\n"
    "edge 2 2\n";

inline EqualityNetwork fix_a() { return parse_eqnet(kFixA); }
inline EqualityNetwork fix_b() { return parse_eqnet(kFixB); }
inline EqualityNetwork fix_c() { return parse_eqnet(kFixC); }

// Balanced flow of FIX-B: b1->c1 2, b2->c2 2.
inline Flow fix_b_balanced_flow(const EqualityNetwork& net) { return parse_flow(net, "flow 1 1 2\nflow 2 2 2\n"); }

// Maximum but unbalanced flow of FIX-B with surpluses (2, 0).
inline Flow fix_b_unbalanced_flow(const EqualityNetwork& net) {
  return parse_flow(net, "flow 1 1 1\nflow 2 1 1\nflow 2 2 2\n");
}

inline Rational q(long long n, long long d = 1) { return Rational(n, d); }

}  // namespace eqflow::fixtures
