#pragma once

// Text formats for graphs and polynomial endomorphisms.
//
//   graph                      poly
//   nodes: a b c               base: y1 y2
//   edge f a b                 op c : -> y1
//   edge g b c                 op s y1 y2 : -> y2
//
// Blank lines and everything after '#' are ignored. Errors are ParseError
// with 1-based line and column.

#include <string>
#include <string_view>
#include <variant>

#include "dcmonad/poly.hpp"
#include "dcmonad/span.hpp"

namespace dcmonad {

Graph parse_graph(std::string_view text);
Polynomial parse_poly(std::string_view text);

// Either format, chosen by the header line.
std::variant<Graph, Polynomial> parse_endo(std::string_view text);

// Reads a file; an unreadable file is a ParseError at 0:0.
std::string read_text_file(const std::string& path);

}  // namespace dcmonad
