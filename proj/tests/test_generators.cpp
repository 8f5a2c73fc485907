#include "eqflow/eqnet_io.hpp"
#include "eqflow/generators.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

namespace {

using namespace eqflow;
using fixtures::q;

TEST(Rng, UniformStaysInRangeAndIsSeeded) {
  Rng a(5), b(5);
  for (int k = 0; k < 1000; ++k) {
    const auto x = a.uniform(-3, 3);
    EXPECT_GE(x, -3);
    EXPECT_LE(x, 3);
    EXPECT_EQ(x, b.uniform(-3, 3));
  }
  EXPECT_THROW(a.uniform(2, 1), std::invalid_argument);
}

TEST(GenRandom, DeterministicBytes) {
  const RandomSpec spec{2, 2, 3, 7, 1, 12, 1, 12};
  EXPECT_EQ(serialize_eqnet(gen_random(spec)), serialize_eqnet(gen_random(spec)));
  RandomSpec other = spec;
  other.seed = 8;
  EXPECT_NO_THROW(gen_random(other));
}

TEST(GenRandom, TooFewEdges) {
  EXPECT_THROW(gen_random(RandomSpec{3, 3, 2, 1}), std::invalid_argument);
  EXPECT_THROW(gen_random(RandomSpec{2, 2, 5, 1}), std::invalid_argument);
  EXPECT_THROW(gen_random(RandomSpec{2, 2, 3, 1, 0, 5, 1, 5}), std::invalid_argument);
}

TEST(GenRandom, RoundTripsAndRespectsRanges) {
  const EqualityNetwork net = gen_random(RandomSpec{5, 5, 10, 1});
  EXPECT_EQ(parse_eqnet(serialize_eqnet(net)), net);
  EXPECT_EQ(net.edge_count(), 10);
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const EqualityNetwork g = gen_random(RandomSpec{4, 6, 9, seed, 3, 5, 10, 11});
    for (const auto& e : g.budgets()) {
      EXPECT_GE(e, 3);
      EXPECT_LE(e, 5);
    }
    for (const auto& p : g.prices()) {
      EXPECT_GE(p, 10);
      EXPECT_LE(p, 11);
    }
  }
}

TEST(ParseBlockSpec, Forms) {
  const BlockSpec spec = parse_block_spec("2:4:1,1:5/2:0");
  ASSERT_EQ(spec.size(), 2u);
  EXPECT_EQ(spec[0].buyers, 2);
  EXPECT_EQ(spec[1].budget, q(5, 2));
  EXPECT_EQ(spec[1].surplus, 0);
  for (const char* bad : {"", "2:4", "2:4:1:0", "x:4:1", "0:4:1", "2:a:1"})
    EXPECT_THROW(parse_block_spec(bad), std::invalid_argument) << bad;
}

TEST(GenBlocks, PricesAndStructure) {
  const EqualityNetwork net = gen_blocks(parse_block_spec("2:4:1,1:2:0"), 1);
  EXPECT_EQ(net.prices(), (std::vector<Rational>{3, 3, 2}));
  EXPECT_EQ(net.budgets(), (std::vector<Rational>{4, 4, 2}));
  EXPECT_EQ(net.edge_count(), 5);
}

TEST(GenBlocks, SingleBuyerBlocks) {
  const EqualityNetwork net = gen_blocks(parse_block_spec("1:5:3,1:1:0"), 9);
  EXPECT_EQ(net.prices(), (std::vector<Rational>{2, 1}));
  EXPECT_EQ(net.edge_count(), 2);
}

TEST(GenBlocks, Validation) {
  EXPECT_THROW(gen_blocks(parse_block_spec("1:5:2,1:4:2"), 1), std::invalid_argument);
  EXPECT_THROW(gen_blocks(parse_block_spec("1:5:5"), 1), std::invalid_argument);
  EXPECT_THROW(gen_blocks(parse_block_spec("1:5:1,1:4:2"), 1), std::invalid_argument);
  EXPECT_THROW(gen_blocks(parse_block_spec("1:5:1,1:4:0"), 1, 2), std::invalid_argument);
}

TEST(GenBlocks, CrossEdgesOnlyPointToEarlierBlocks) {
  const BlockSpec spec = parse_block_spec("2:9:5,3:6:2,2:3:0");
  const EqualityNetwork net = gen_blocks(spec, 3, 8);
  const std::vector<int> block_of{0, 0, 1, 1, 1, 2, 2};
  int cross = 0;
  for (const auto& e : net.edges()) {
    EXPECT_GE(block_of[e.buyer], block_of[e.good]);
    cross += block_of[e.buyer] != block_of[e.good];
  }
  EXPECT_EQ(cross, 8);
  EXPECT_EQ(serialize_eqnet(gen_blocks(spec, 3, 8)), serialize_eqnet(net));
}

}  // namespace
