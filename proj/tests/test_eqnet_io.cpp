#include "eqflow/eqnet_io.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>

namespace {

using namespace eqflow;
using K = NetworkErrorKind;

NetworkError parse_error(const std::string& text) {
  try {
    parse_eqnet(text);
  } catch (const NetworkError& e) {
    return e;
  }
  ADD_FAILURE() << "accepted:\n" << text;
  return NetworkError(K::kSyntax, "");
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return text.replace(pos, from.size(), to);
}

TEST(ParseEqnet, FixB) {
  const EqualityNetwork net = fixtures::fix_b();
  EXPECT_EQ(net.buyer_count(), 2);
  EXPECT_EQ(net.good_count(), 2);
  EXPECT_EQ(net.edge_count(), 3);
  EXPECT_EQ(net.budget(1), 3);
}

TEST(ParseEqnet, NonPositivePrice) {
  const NetworkError e = parse_error(replace(fixtures::kFixB, "price 2 2", "price 2 0"));
  EXPECT_EQ(e.kind(), K::kNonPositivePrice);
  EXPECT_EQ(e.line(), 7);
  EXPECT_EQ(e.column(), 9);
}

TEST(ParseEqnet, IsolatedBuyer) {
  std::string text = replace(fixtures::kFixB, "edge 2 1\n", "");
  text = replace(text, "edge 2 2\n", "edge 1 2\n");
  const NetworkError e = parse_error(text);
  EXPECT_EQ(e.kind(), K::kIsolatedBuyer);
  EXPECT_NE(std::string(e.what()).find("buyer 2"), std::string::npos);
}

TEST(ParseEqnet, DistinctErrorKinds) {
  const std::string b = fixtures::kFixB;
  EXPECT_EQ(parse_error(replace(b, "budget 1 3", "budget 1 -3")).kind(), K::kNonPositiveBudget);
  EXPECT_EQ(parse_error(b + "edge 1 1\n").kind(), K::kDuplicateEdge);
  EXPECT_EQ(parse_error(b + "edge 3 1\n").kind(), K::kIndexOutOfRange);
  EXPECT_EQ(parse_error(replace(b, "edge 2 1\n", "edge 2 1 7\n")).kind(), K::kSyntax);
  EXPECT_EQ(parse_error(replace(b, "budget 1 3", "budget 1 3.5")).kind(), K::kSyntax);
  EXPECT_EQ(parse_error(replace(b, "eqnet 1", "eqnet 2")).kind(), K::kSyntax);
  EXPECT_EQ(parse_error(replace(b, "budget 2 3\n", "")).kind(), K::kMissingDeclaration);
  EXPECT_EQ(parse_error(b + "budget 2 4\n").kind(), K::kDuplicateDeclaration);
  EXPECT_EQ(parse_error(b + "supply 1 1\n").kind(), K::kSyntax);
  EXPECT_EQ(parse_error("").kind(), K::kSyntax);
  EXPECT_EQ(parse_error("eqnet 1\nbudget 1 2\nbuyers 1\n").kind(), K::kMissingDeclaration);
}

TEST(ParseEqnet, SyntaxErrorPosition) {
  const NetworkError e = parse_error("eqnet 1\nbuyers 1\ngoods 1\nbudget 1 2\nprice 1 x\nedge 1 1\n");
  EXPECT_EQ(e.kind(), K::kSyntax);
  EXPECT_EQ(e.line(), 5);
  EXPECT_EQ(e.column(), 9);
}

TEST(ParseEqnet, CommentsBlankLinesAndAnyOrder) {
  const EqualityNetwork net = parse_eqnet(
      "# leading comment\n\neqnet 1   # header\ngoods 1\nbuyers 1\n  edge 1 1\nprice 1 4/2\nbudget 1 2\n");
  EXPECT_EQ(net, fixtures::fix_a());
}

TEST(SerializeEqnet, FixACanonicalSixLines) {
  EXPECT_EQ(serialize_eqnet(fixtures::fix_a()), "eqnet 1\nbuyers 1\ngoods 1\nbudget 1 2\nprice 1 2\nedge 1 1\n");
}

TEST(SerializeEqnet, RoundTripFixtures) {
  for (const char* text : {fixtures::kFixA, fixtures::kFixB, fixtures::kFixC}) {
    const EqualityNetwork net = parse_eqnet(text);
    EXPECT_EQ(parse_eqnet(serialize_eqnet(net)), net);
    EXPECT_EQ(serialize_eqnet(net), text);
  }
}

TEST(SerializeEqnet, CanonicalizesAcceptedDocuments) {
  const EqualityNetwork net =
      parse_eqnet("eqnet 1\nbuyers 2\ngoods 1\nedge 2 1\nedge 1 1\nbudget 2 6/4\nbudget 1 10/2\nprice 1 1\n");
  EXPECT_EQ(serialize_eqnet(net),
            "eqnet 1\nbuyers 2\ngoods 1\nbudget 1 5\nbudget 2 3/2\nprice 1 1\nedge 1 1\nedge 2 1\n");
}

TEST(FlowFile, ParseAndSerialize) {
  const EqualityNetwork net = fixtures::fix_b();
  const Flow f = parse_flow(net, "# balanced\nflow 2 2 2\nflow 1 1 2\nflow 2 1 0\n");
  EXPECT_EQ(f.value, 4);
  EXPECT_EQ(serialize_flow(net, f), "flow 1 1 2\nflow 2 2 2\n");
  EXPECT_EQ(parse_flow(net, serialize_flow(net, f)).amount, f.amount);
}

TEST(FlowFile, Errors) {
  const EqualityNetwork net = fixtures::fix_b();
  auto kind = [&](const char* text) {
    try {
      parse_flow(net, text);
    } catch (const NetworkError& e) {
      return e.kind();
    }
    ADD_FAILURE() << text;
    return K::kSyntax;
  };
  EXPECT_EQ(kind("flow 1 2 1\n"), K::kIndexOutOfRange);  // no such edge
  EXPECT_EQ(kind("flow 3 1 1\n"), K::kIndexOutOfRange);
  EXPECT_EQ(kind("flow 1 1 1\nflow 1 1 1\n"), K::kDuplicateDeclaration);
  EXPECT_EQ(kind("flux 1 1 1\n"), K::kSyntax);
  EXPECT_EQ(kind("flow 1 1\n"), K::kSyntax);
}

TEST(FlowFile, SampleFilesMatchFixtures) {
  const EqualityNetwork net = fixtures::fix_b();
  auto read = [](const std::string& name) {
    std::ifstream in(std::string(EQFLOW_DATA_DIR) + "/" + name);
    std::stringstream text;
    text << in.rdbuf();
    return text.str();
  };
  EXPECT_EQ(parse_eqnet(read("fix_a.eqnet")), fixtures::fix_a());
  EXPECT_EQ(parse_eqnet(read("fix_b.eqnet")), net);
  EXPECT_EQ(parse_eqnet(read("fix_c.eqnet")), fixtures::fix_c());
  EXPECT_EQ(parse_flow(net, read("fix_b_balanced.flow")).amount, fixtures::fix_b_balanced_flow(net).amount);
  EXPECT_EQ(parse_flow(net, read("fix_b_unbalanced.flow")).amount, fixtures::fix_b_unbalanced_flow(net).amount);
}

}  // namespace
