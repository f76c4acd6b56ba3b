#include "dcmonad/parse.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>
#include <vector>

namespace dcmonad {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r') ++i;
      if (i > start) line.tokens.push_back({std::string(raw.substr(start, i - start)), start + 1});
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
    pos = end + 1;
  }
  return out;
}

[[noreturn]] void fail(const Line& line, const Token& tok, const std::string& what) { throw ParseError(line.number, tok.column, what); }

[[noreturn]] void fail_end(const Line& line, const std::string& what) {
  const Token& last = line.tokens.back();
  throw ParseError(line.number, last.column + last.text.size(), what);
}

void expect_header(const std::vector<Line>& lines, const std::string& keyword) {
  if (lines.empty()) throw ParseError(1, 1, "empty input, expected '" + keyword + "'");
  const Line& first = lines.front();
  if (first.tokens.size() != 1 || first.tokens[0].text != keyword) fail(first, first.tokens[0], "expected '" + keyword + "'");
}

// "key: a b c" with the colon attached to the key or standing alone.
std::vector<Token> list_after(const Line& line, const std::string& key) {
  std::vector<Token> names;
  std::size_t i = 1;
  if (line.tokens[0].text == key + ":") {
    // ok
  } else if (line.tokens[0].text == key && line.tokens.size() > 1 && line.tokens[1].text == ":") {
    i = 2;
  } else {
    fail(line, line.tokens[0], "expected '" + key + ":'");
  }
  for (; i < line.tokens.size(); ++i) names.push_back(line.tokens[i]);
  return names;
}

FinSet declared_set(const Line& line, const std::vector<Token>& names, const std::string& what) {
  std::vector<std::string> elems;
  std::unordered_set<std::string> seen;
  for (const auto& t : names) {
    if (!seen.insert(t.text).second) fail(line, t, "duplicate " + what + " '" + t.text + "'");
    elems.push_back(t.text);
  }
  return FinSet(elems);
}

const Token& lookup(const Line& line, const FinSet& set, const Token& t, const std::string& what) {
  if (!set.contains(t.text)) fail(line, t, "unknown " + what + " '" + t.text + "'");
  return t;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  auto lines = tokenize(text);
  expect_header(lines, "graph");
  std::optional<FinSet> nodes;
  std::vector<std::string> edge_names;
  std::vector<std::pair<std::string, std::string>> ends;
  std::unordered_set<std::string> seen;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    const std::string& head = line.tokens[0].text;
    if (head == "nodes:" || head == "nodes") {
      if (nodes) fail(line, line.tokens[0], "second 'nodes:' line");
      nodes = declared_set(line, list_after(line, "nodes"), "node");
    } else if (head == "edge") {
      if (!nodes) fail(line, line.tokens[0], "edge before 'nodes:' line");
      if (line.tokens.size() < 4) fail_end(line, "expected 'edge <name> <src> <tgt>'");
      if (line.tokens.size() > 4) fail(line, line.tokens[4], "unexpected token after edge target");
      const Token& name = line.tokens[1];
      if (!seen.insert(name.text).second) fail(line, name, "duplicate edge '" + name.text + "'");
      lookup(line, *nodes, line.tokens[2], "node");
      lookup(line, *nodes, line.tokens[3], "node");
      edge_names.push_back(name.text);
      ends.emplace_back(line.tokens[2].text, line.tokens[3].text);
    } else {
      fail(line, line.tokens[0], "expected 'nodes:' or 'edge'");
    }
  }
  if (!nodes) throw ParseError(lines.back().number + 1, 1, "missing 'nodes:' line");
  return make_graph(*nodes, edge_names, ends);
}

Polynomial parse_poly(std::string_view text) {
  auto lines = tokenize(text);
  expect_header(lines, "poly");
  std::optional<FinSet> base;
  std::vector<std::pair<std::string, std::pair<std::vector<std::string>, std::string>>> ops;
  std::unordered_set<std::string> seen;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    const std::string& head = line.tokens[0].text;
    if (head == "base:" || head == "base") {
      if (base) fail(line, line.tokens[0], "second 'base:' line");
      base = declared_set(line, list_after(line, "base"), "type");
    } else if (head == "op") {
      if (!base) fail(line, line.tokens[0], "op before 'base:' line");
      if (line.tokens.size() < 2) fail_end(line, "expected an op name");
      const Token& name = line.tokens[1];
      if (!seen.insert(name.text).second) fail(line, name, "duplicate op '" + name.text + "'");
      std::vector<std::string> inputs;
      std::size_t i = 2;
      for (; i < line.tokens.size() && line.tokens[i].text != ":" && line.tokens[i].text != ":->"; ++i) {
        inputs.push_back(lookup(line, *base, line.tokens[i], "type").text);
      }
      if (i == line.tokens.size()) fail_end(line, "expected ': -> <output>'");
      if (line.tokens[i].text == ":") {
        ++i;
        if (i == line.tokens.size() || line.tokens[i].text != "->") {
          if (i == line.tokens.size()) fail_end(line, "expected '->'");
          fail(line, line.tokens[i], "expected '->'");
        }
      }
      ++i;
      if (i == line.tokens.size()) fail_end(line, "expected an output type");
      const Token& out = lookup(line, *base, line.tokens[i], "type");
      if (i + 1 < line.tokens.size()) fail(line, line.tokens[i + 1], "unexpected token after output type");
      ops.push_back({name.text, {inputs, out.text}});
    } else {
      fail(line, line.tokens[0], "expected 'base:' or 'op'");
    }
  }
  if (!base) throw ParseError(lines.back().number + 1, 1, "missing 'base:' line");
  return poly_from_ops(*base, *base, ops);
}

std::variant<Graph, Polynomial> parse_endo(std::string_view text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, 1, "empty input, expected 'graph' or 'poly'");
  const Token& head = lines.front().tokens.front();
  if (head.text == "graph") return parse_graph(text);
  if (head.text == "poly") return parse_poly(text);
  throw ParseError(lines.front().number, head.column, "expected 'graph' or 'poly'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace dcmonad
