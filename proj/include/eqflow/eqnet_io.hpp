#pragma once

// eqnet v1 text format and the companion flow file format.
//
//   eqnet 1
//   buyers <n>
//   goods <k>
//   budget <i> <rational>     one per buyer, 1-based
//   price <j> <rational>      one per good, 1-based
//   edge <i> <j>              one per equality edge
//
// '#' starts a comment; tokens are whitespace separated; rationals are "a"
// or "a/b". Flow files hold lines "flow <buyer> <good> <rational>"; omitted
// pairs carry zero flow.

#include "eqflow/network.hpp"

#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace eqflow {

namespace detail {

struct Token {
  std::string text;
  int column;  // 1-based
};

struct Line {
  int number;
  std::vector<Token> tokens;
};

inline std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    Line line{number, {}};
    std::size_t pos = 0;
    while (pos < raw.size()) {
      while (pos < raw.size() && (raw[pos] == ' ' || raw[pos] == '\t' || raw[pos] == '\r')) ++pos;
      if (pos >= raw.size()) break;
      std::size_t end = pos;
      while (end < raw.size() && raw[end] != ' ' && raw[end] != '\t' && raw[end] != '\r') ++end;
      line.tokens.push_back({raw.substr(pos, end - pos), static_cast<int>(pos) + 1});
      pos = end;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

inline void expect_arity(const Line& line, std::size_t arity) {
  if (line.tokens.size() != arity) {
    const int column = line.tokens.size() > arity ? line.tokens[arity].column : line.tokens.back().column;
    throw NetworkError(NetworkErrorKind::kSyntax,
                       "'" + line.tokens[0].text + "' expects " + std::to_string(arity - 1) + " argument(s)",
                       line.number, column);
  }
}

inline long long parse_count(const Line& line, const Token& tok) {
  long long value = 0;
  bool ok = !tok.text.empty() && tok.text.size() <= 9;
  for (char c : tok.text) {
    if (c < '0' || c > '9') ok = false;
    else value = value * 10 + (c - '0');
  }
  if (!ok) throw NetworkError(NetworkErrorKind::kSyntax, "expected a non-negative integer, got '" + tok.text + "'",
                              line.number, tok.column);
  return value;
}

inline int parse_index(const Line& line, const Token& tok, int bound, const char* what) {
  const long long value = parse_count(line, tok);
  if (value < 1 || value > bound)
    throw NetworkError(NetworkErrorKind::kIndexOutOfRange,
                       std::string(what) + " index " + tok.text + " not in 1.." + std::to_string(bound),
                       line.number, tok.column);
  return static_cast<int>(value) - 1;
}

inline Rational parse_value(const Line& line, const Token& tok) {
  auto q = try_parse_rational(tok.text);
  if (!q) throw NetworkError(NetworkErrorKind::kSyntax, "malformed rational '" + tok.text + "'", line.number,
                             tok.column);
  return *q;
}

}  // namespace detail

inline EqualityNetwork parse_eqnet(std::istream& in) {
  using detail::Line;
  using K = NetworkErrorKind;
  const std::vector<Line> lines = detail::tokenize(in);
  if (lines.empty()) throw NetworkError(K::kSyntax, "empty document, expected 'eqnet 1'", 1, 1);
  const Line& header = lines.front();
  if (header.tokens[0].text != "eqnet" || header.tokens.size() != 2 || header.tokens[1].text != "1")
    throw NetworkError(K::kSyntax, "expected header 'eqnet 1'", header.number, header.tokens[0].column);

  std::optional<int> buyers, goods;
  std::vector<std::optional<Rational>> budgets, prices;
  std::vector<EqualityEdge> edges;
  std::set<std::pair<int, int>> seen_edges;

  auto require_counts = [&](const Line& line, bool need_buyers, bool need_goods) {
    if ((need_buyers && !buyers) || (need_goods && !goods))
      throw NetworkError(K::kMissingDeclaration, "'buyers' and 'goods' must precede '" + line.tokens[0].text + "'",
                         line.number, line.tokens[0].column);
  };

  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    const std::string& key = line.tokens[0].text;
    if (key == "buyers" || key == "goods") {
      detail::expect_arity(line, 2);
      auto& slot = key == "buyers" ? buyers : goods;
      if (slot) throw NetworkError(K::kDuplicateDeclaration, "'" + key + "' declared twice", line.number, 1);
      const long long count = detail::parse_count(line, line.tokens[1]);
      if (count < 1)
        throw NetworkError(K::kSyntax, "'" + key + "' must be at least 1", line.number, line.tokens[1].column);
      slot = static_cast<int>(count);
      (key == "buyers" ? budgets : prices).assign(count, std::nullopt);
    } else if (key == "budget" || key == "price") {
      detail::expect_arity(line, 3);
      const bool is_budget = key == "budget";
      require_counts(line, is_budget, !is_budget);
      const int index = detail::parse_index(line, line.tokens[1], is_budget ? *buyers : *goods,
                                            is_budget ? "buyer" : "good");
      Rational value = detail::parse_value(line, line.tokens[2]);
      if (value <= 0)
        throw NetworkError(is_budget ? K::kNonPositiveBudget : K::kNonPositivePrice,
                           (is_budget ? "buyer " : "good ") + line.tokens[1].text + " value " + line.tokens[2].text,
                           line.number, line.tokens[2].column);
      auto& slot = (is_budget ? budgets : prices)[index];
      if (slot)
        throw NetworkError(K::kDuplicateDeclaration, key + " " + line.tokens[1].text + " given twice", line.number, 1);
      slot = std::move(value);
    } else if (key == "edge") {
      detail::expect_arity(line, 3);
      require_counts(line, true, true);
      const int b = detail::parse_index(line, line.tokens[1], *buyers, "buyer");
      const int g = detail::parse_index(line, line.tokens[2], *goods, "good");
      if (!seen_edges.insert({b, g}).second)
        throw NetworkError(K::kDuplicateEdge, "edge " + line.tokens[1].text + " " + line.tokens[2].text, line.number,
                           1);
      edges.push_back({b, g});
    } else if (key == "eqnet") {
      throw NetworkError(K::kDuplicateDeclaration, "repeated header", line.number, 1);
    } else {
      throw NetworkError(K::kSyntax, "unknown keyword '" + key + "'", line.number, line.tokens[0].column);
    }
  }

  if (!buyers) throw NetworkError(K::kMissingDeclaration, "no 'buyers' line");
  if (!goods) throw NetworkError(K::kMissingDeclaration, "no 'goods' line");
  std::vector<Rational> budget_values, price_values;
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    if (!budgets[i]) throw NetworkError(K::kMissingDeclaration, "no budget for buyer " + std::to_string(i + 1));
    budget_values.push_back(*budgets[i]);
  }
  for (std::size_t j = 0; j < prices.size(); ++j) {
    if (!prices[j]) throw NetworkError(K::kMissingDeclaration, "no price for good " + std::to_string(j + 1));
    price_values.push_back(*prices[j]);
  }
  return EqualityNetwork(std::move(budget_values), std::move(price_values), std::move(edges));
}

inline EqualityNetwork parse_eqnet(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_eqnet(in);
}

inline std::string serialize_eqnet(const EqualityNetwork& net) {
  std::ostringstream out;
  out << "eqnet 1\n";
  out << "buyers " << net.buyer_count() << "\n";
  out << "goods " << net.good_count() << "\n";
  for (int i = 0; i < net.buyer_count(); ++i) out << "budget " << i + 1 << " " << to_string(net.budget(i)) << "\n";
  for (int j = 0; j < net.good_count(); ++j) out << "price " << j + 1 << " " << to_string(net.price(j)) << "\n";
  for (const auto& e : net.edges()) out << "edge " << e.buyer + 1 << " " << e.good + 1 << "\n";
  return out.str();
}

// Reads a flow file against net; each "flow i j q" line must name an edge
// of net and may appear at most once.
inline Flow parse_flow(const EqualityNetwork& net, std::istream& in) {
  using K = NetworkErrorKind;
  std::vector<Rational> amount(net.edge_count(), Rational(0));
  std::vector<char> given(net.edge_count(), 0);
  for (const auto& line : detail::tokenize(in)) {
    if (line.tokens[0].text != "flow")
      throw NetworkError(K::kSyntax, "expected 'flow', got '" + line.tokens[0].text + "'", line.number,
                         line.tokens[0].column);
    detail::expect_arity(line, 4);
    const int b = detail::parse_index(line, line.tokens[1], net.buyer_count(), "buyer");
    const int g = detail::parse_index(line, line.tokens[2], net.good_count(), "good");
    const int e = net.find_edge(b, g);
    if (e < 0)
      throw NetworkError(K::kIndexOutOfRange,
                         "no edge " + line.tokens[1].text + " " + line.tokens[2].text + " in network", line.number,
                         line.tokens[1].column);
    if (given[e])
      throw NetworkError(K::kDuplicateDeclaration, "flow on " + line.tokens[1].text + " " + line.tokens[2].text +
                                                       " given twice", line.number, 1);
    given[e] = 1;
    amount[e] = detail::parse_value(line, line.tokens[3]);
  }
  return flow_from_edge_amounts(net, amount);
}

inline Flow parse_flow(const EqualityNetwork& net, std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_flow(net, in);
}

// Writes the buyer->good amounts of a flow on to_flow_network(net); zero
// entries are omitted.
inline std::string serialize_flow(const EqualityNetwork& net, const Flow& f) {
  std::ostringstream out;
  for (int e = 0; e < net.edge_count(); ++e) {
    const Rational& x = f.amount.at(net.edge_arc(e));
    if (x == 0) continue;
    out << "flow " << net.edges()[e].buyer + 1 << " " << net.edges()[e].good + 1 << " " << to_string(x) << "\n";
  }
  return out.str();
}

}  // namespace eqflow
