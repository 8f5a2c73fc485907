#pragma once

// Seeded instance generators. Both are deterministic for a fixed seed on any
// platform: draws use mt19937_64 with rejection sampling rather than the
// implementation-defined std distributions.

#include "eqflow/network.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqflow {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("Rng::uniform: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t draw;
    do draw = engine_();
    while (draw >= limit);
    return lo + static_cast<std::int64_t>(draw % span);
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[uniform(0, static_cast<std::int64_t>(i) - 1)]);
  }

 private:
  std::mt19937_64 engine_;
};

struct RandomSpec {
  int buyers = 2;
  int goods = 2;
  int edges = 2;
  std::uint64_t seed = 1;
  std::int64_t budget_min = 1, budget_max = 12;
  std::int64_t price_min = 1, price_max = 12;
};

// Spanning assignment first (every buyer and good gets an edge), then
// distinct random extra edges until the requested count is reached.
inline EqualityNetwork gen_random(const RandomSpec& spec) {
  if (spec.buyers < 1 || spec.goods < 1) throw std::invalid_argument("gen_random: need at least one buyer and good");
  if (spec.edges < std::max(spec.buyers, spec.goods))
    throw std::invalid_argument("gen_random: too few edges (" + std::to_string(spec.edges) + " < " +
                                std::to_string(std::max(spec.buyers, spec.goods)) + ")");
  if (static_cast<std::int64_t>(spec.edges) > static_cast<std::int64_t>(spec.buyers) * spec.goods)
    throw std::invalid_argument("gen_random: more edges than buyer/good pairs");
  if (spec.budget_min < 1 || spec.price_min < 1 || spec.budget_min > spec.budget_max || spec.price_min > spec.price_max)
    throw std::invalid_argument("gen_random: value ranges must be non-empty and start at 1 or above");

  Rng rng(spec.seed);
  std::vector<Rational> budgets, prices;
  for (int i = 0; i < spec.buyers; ++i) budgets.emplace_back(rng.uniform(spec.budget_min, spec.budget_max));
  for (int j = 0; j < spec.goods; ++j) prices.emplace_back(rng.uniform(spec.price_min, spec.price_max));

  std::vector<int> buyer_order(spec.buyers), good_order(spec.goods);
  for (int i = 0; i < spec.buyers; ++i) buyer_order[i] = i;
  for (int j = 0; j < spec.goods; ++j) good_order[j] = j;
  rng.shuffle(buyer_order);
  rng.shuffle(good_order);

  std::set<std::pair<int, int>> chosen;
  const int spanning = std::max(spec.buyers, spec.goods);
  for (int k = 0; k < spanning; ++k) chosen.insert({buyer_order[k % spec.buyers], good_order[k % spec.goods]});
  while (static_cast<int>(chosen.size()) < spec.edges)
    chosen.insert({static_cast<int>(rng.uniform(0, spec.buyers - 1)), static_cast<int>(rng.uniform(0, spec.goods - 1))});

  std::vector<EqualityEdge> edges;
  for (const auto& [b, g] : chosen) edges.push_back({b, g});
  return EqualityNetwork(std::move(budgets), std::move(prices), std::move(edges));
}

// One block of `buyers` buyers with a common budget and target surplus.
struct BlockSpecEntry {
  int buyers;
  Rational budget;
  Rational surplus;
};

using BlockSpec = std::vector<BlockSpecEntry>;

// Parses "k:e:r,k:e:r,...".
inline BlockSpec parse_block_spec(const std::string& text) {
  BlockSpec spec;
  std::stringstream entries(text);
  std::string entry;
  while (std::getline(entries, entry, ',')) {
    std::stringstream fields(entry);
    std::string k, e, r;
    if (!std::getline(fields, k, ':') || !std::getline(fields, e, ':') || !std::getline(fields, r, ':') ||
        fields.rdbuf()->in_avail() > 0)
      throw std::invalid_argument("block spec entry '" + entry + "' is not k:e:r");
    auto count = try_parse_rational(k);
    if (!count || !is_integer(*count) || *count < 1)
      throw std::invalid_argument("block spec: bad buyer count '" + k + "'");
    spec.push_back({static_cast<int>(numerator(*count)), parse_rational(e), parse_rational(r)});
  }
  if (spec.empty()) throw std::invalid_argument("block spec is empty");
  return spec;
}

// Builds an equality network whose balanced surpluses are exactly the
// per-block targets. Each block gets as many goods as buyers, joined
// completely, each priced e - r. `cross_edges` extra edges run from buyers of
// later (lower-surplus) blocks to goods of earlier blocks.
inline EqualityNetwork gen_blocks(const BlockSpec& spec, std::uint64_t seed, int cross_edges = 0) {
  if (spec.empty()) throw std::invalid_argument("gen_blocks: empty spec");
  for (std::size_t b = 0; b < spec.size(); ++b) {
    const auto& block = spec[b];
    if (block.buyers < 1) throw std::invalid_argument("gen_blocks: block without buyers");
    if (block.surplus < 0 || block.surplus >= block.budget)
      throw std::invalid_argument("gen_blocks: need 0 <= r < e in block " + std::to_string(b + 1));
    if (b > 0 && !(spec[b - 1].surplus > block.surplus))
      throw std::invalid_argument("gen_blocks: surpluses must be strictly decreasing");
  }

  std::vector<Rational> budgets, prices;
  std::vector<int> first_buyer, first_good;
  std::set<std::pair<int, int>> chosen;
  for (const auto& block : spec) {
    first_buyer.push_back(static_cast<int>(budgets.size()));
    first_good.push_back(static_cast<int>(prices.size()));
    for (int k = 0; k < block.buyers; ++k) {
      budgets.push_back(block.budget);
      prices.push_back(block.budget - block.surplus);
    }
    for (int i = 0; i < block.buyers; ++i)
      for (int j = 0; j < block.buyers; ++j) chosen.insert({first_buyer.back() + i, first_good.back() + j});
  }

  std::vector<std::pair<int, int>> candidates;
  for (std::size_t later = 1; later < spec.size(); ++later)
    for (std::size_t earlier = 0; earlier < later; ++earlier)
      for (int i = 0; i < spec[later].buyers; ++i)
        for (int j = 0; j < spec[earlier].buyers; ++j)
          candidates.push_back({first_buyer[later] + i, first_good[earlier] + j});
  if (cross_edges < 0 || cross_edges > static_cast<int>(candidates.size()))
    throw std::invalid_argument("gen_blocks: cross edge count must be in [0, " + std::to_string(candidates.size()) +
                                "]");
  Rng rng(seed);
  rng.shuffle(candidates);
  for (int k = 0; k < cross_edges; ++k) chosen.insert(candidates[k]);

  std::vector<EqualityEdge> edges;
  for (const auto& [b, g] : chosen) edges.push_back({b, g});
  return EqualityNetwork(std::move(budgets), std::move(prices), std::move(edges));
}

}  // namespace eqflow
