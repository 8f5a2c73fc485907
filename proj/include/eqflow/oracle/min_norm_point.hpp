#pragma once

// Balanced surplus vector straight from its definition: minimise sum r_i^2
// over all maximum flows. The spend vectors y of maximum flows are the bases
// of the polymatroid with rank rho(S) = min_{T in S} (p(N(T)) + e(S \ T)), so
// z = y - e = -r ranges over the base polytope of
//     f(S) = min_{T in S} (p(N(T)) - e(T)),
// and the balanced surpluses are -z* for the minimum-norm point z* of B(f).
// z* is found with Wolfe's minimum-norm-point method (a conditional-gradient
// scheme whose linear step is Edmonds' greedy algorithm) in exact rational
// arithmetic. Rank values come from subset enumeration, independent of any
// max-flow code.

#include "eqflow/network.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace eqflow::oracle {

inline constexpr int kMaxMinNormBuyers = 16;

struct MinNormResult {
  std::vector<Rational> surpluses;
  Rational gap;  // Wolfe gap ||x||^2 - min_q <x, q> at the returned point
  int iterations = 0;
  bool snapped = false;
};

namespace detail {

using Vec = std::vector<Rational>;

inline Rational dot(const Vec& a, const Vec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

class ShiftedRank {
 public:
  explicit ShiftedRank(const EqualityNetwork& net) : n_(net.buyer_count()) {
    if (n_ > kMaxMinNormBuyers) throw std::length_error("squared_norm_oracle: too many buyers");
    if (net.good_count() > 64) throw std::length_error("squared_norm_oracle: too many goods");
    std::vector<std::uint64_t> neighbours(n_, 0);
    for (const auto& e : net.edges()) neighbours[e.buyer] |= std::uint64_t{1} << e.good;
    const std::uint32_t full = 1u << n_;
    value_.assign(full, Rational(0));
    for (std::uint32_t mask = 0; mask < full; ++mask) {
      std::uint64_t goods = 0;
      Rational h = 0;
      for (int i = 0; i < n_; ++i)
        if (mask & (1u << i)) {
          goods |= neighbours[i];
          h -= net.budget(i);
        }
      for (int j = 0; j < net.good_count(); ++j)
        if (goods & (std::uint64_t{1} << j)) h += net.price(j);
      value_[mask] = h;
    }
    // Subset minimum (sum-over-subsets DP).
    for (int i = 0; i < n_; ++i)
      for (std::uint32_t mask = 0; mask < full; ++mask)
        if ((mask & (1u << i)) && value_[mask ^ (1u << i)] < value_[mask]) value_[mask] = value_[mask ^ (1u << i)];
  }

  int size() const { return n_; }
  const Rational& operator()(std::uint32_t mask) const { return value_[mask]; }

  // Vertex of B(f) minimising <w, z> (ascending greedy).
  Vec greedy(const Vec& w) const {
    std::vector<int> order(n_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return w[a] < w[b]; });
    Vec z(n_);
    std::uint32_t prefix = 0;
    for (int i : order) {
      const std::uint32_t next = prefix | (1u << i);
      z[i] = value_[next] - value_[prefix];
      prefix = next;
    }
    return z;
  }

  bool in_base_polytope(const Vec& z) const {
    const std::uint32_t full = 1u << n_;
    for (std::uint32_t mask = 0; mask < full; ++mask) {
      Rational s = 0;
      for (int i = 0; i < n_; ++i)
        if (mask & (1u << i)) s += z[i];
      if (s > value_[mask]) return false;
      if (mask == full - 1 && s != value_[mask]) return false;
    }
    return true;
  }

 private:
  int n_;
  std::vector<Rational> value_;
};

// Affine minimiser of the points: coefficients alpha (sum 1) minimising
// ||sum alpha_i s_i||, from the bordered Gram system.
inline Vec affine_minimizer(const std::vector<Vec>& points) {
  const std::size_t k = points.size();
  std::vector<Vec> a(k + 1, Vec(k + 2, Rational(0)));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = dot(points[i], points[j]);
    a[i][k] = 1;
    a[k][i] = 1;
  }
  a[k][k + 1] = 1;  // right-hand side column
  for (std::size_t col = 0; col <= k; ++col) {
    std::size_t pivot = col;
    while (pivot <= k && a[pivot][col] == 0) ++pivot;
    if (pivot > k) throw std::logic_error("affine_minimizer: affinely dependent point set");
    std::swap(a[pivot], a[col]);
    for (std::size_t r = 0; r <= k; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= k + 1; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  Vec alpha(k);
  for (std::size_t i = 0; i < k; ++i) alpha[i] = a[i][k + 1] / a[i][i];
  return alpha;
}

inline Vec combine(const std::vector<Vec>& points, const Vec& weights) {
  Vec x(points.front().size(), Rational(0));
  for (std::size_t p = 0; p < points.size(); ++p)
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += weights[p] * points[p][i];
  return x;
}

}  // namespace detail

inline MinNormResult min_norm_surpluses(const EqualityNetwork& net, const Rational& tolerance,
                                        int max_iterations = 10000) {
  using detail::Vec;
  const detail::ShiftedRank rank(net);
  const int n = rank.size();

  std::vector<Vec> corral{rank.greedy(Vec(n, Rational(0)))};
  Vec weights{Rational(1)};
  Vec x = corral.front();
  MinNormResult out;
  Rational gap = 0;
  for (;;) {
    if (++out.iterations > max_iterations) throw std::runtime_error("squared_norm_oracle: no convergence");
    const Vec q = rank.greedy(x);
    gap = detail::dot(x, x) - detail::dot(x, q);
    if (gap <= tolerance) break;
    if (std::find(corral.begin(), corral.end(), q) != corral.end()) break;
    corral.push_back(q);
    weights.push_back(Rational(0));
    for (;;) {
      const Vec alpha = detail::affine_minimizer(corral);
      if (std::all_of(alpha.begin(), alpha.end(), [](const Rational& a) { return a > 0; })) {
        weights = alpha;
        x = detail::combine(corral, weights);
        break;
      }
      Rational theta = 1;
      for (std::size_t i = 0; i < alpha.size(); ++i)
        if (alpha[i] <= 0 && weights[i] != alpha[i])
          theta = std::min(theta, Rational(weights[i] / (weights[i] - alpha[i])));
      std::vector<Vec> kept;
      Vec kept_weights;
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        const Rational w = theta * alpha[i] + (1 - theta) * weights[i];
        if (w > 0) {
          kept.push_back(std::move(corral[i]));
          kept_weights.push_back(w);
        }
      }
      corral = std::move(kept);
      weights = std::move(kept_weights);
      x = detail::combine(corral, weights);
    }
  }
  out.gap = gap;

  // With a positive gap, |x_i - x*_i| <= sqrt(gap). Snap each coordinate to
  // the simplest nearby rational and keep it only if it is exactly optimal.
  if (gap > 0) {
    Rational radius = 1;
    while (radius * radius / 4 >= gap) radius /= 2;
    Vec snapped(n);
    for (int i = 0; i < n; ++i) {
      const bool negative = x[i] < 0;
      const Rational mag = negative ? Rational(-x[i]) : x[i];
      const Rational lo = mag > radius ? Rational(mag - radius) : Rational(0);
      const Rational s = simplest_between(lo, mag + radius);
      snapped[i] = negative ? Rational(-s) : s;
    }
    if (rank.in_base_polytope(snapped) &&
        detail::dot(snapped, snapped) == detail::dot(snapped, rank.greedy(snapped))) {
      x = snapped;
      out.gap = 0;
      out.snapped = true;
    }
  }
  for (const auto& z : x) out.surpluses.push_back(-z);
  return out;
}

// Surplus vector of a balanced flow, accurate to the given gap tolerance.
inline std::vector<Rational> squared_norm_oracle(const EqualityNetwork& net, const Rational& tolerance) {
  return min_norm_surpluses(net, tolerance).surpluses;
}

}  // namespace eqflow::oracle
