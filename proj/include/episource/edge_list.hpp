#pragma once

#include <iosfwd>
#include <string>

#include "episource/graph.hpp"

namespace episource {

/// Reads `<label> <label>` lines. `#` starts a comment; an optional
/// `%n <count>` header pre-creates vertices "0".."count-1" so isolated
/// vertices survive a round trip. Labels that are exactly 0..n-1 map to
/// plain vertex ids. Duplicate edges are merged; self-loops and
/// malformed lines throw std::invalid_argument naming the line.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);

/// Writes a `%n` header when an unlabeled graph has isolated vertices, then
/// one edge per line using vertex labels.
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace episource
