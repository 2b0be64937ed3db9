#pragma once

#include <filesystem>
#include <iosfwd>

#include "kemeny/graph.hpp"

namespace kemeny {

// Edge-list text format:
//
//   n m
//   i j [c]      (m lines, 0-based vertex ids, conductance c defaults to 1.0)
//
// Blank lines and lines starting with '#' are ignored. Self-loops,
// non-positive weights, out-of-range ids and a wrong edge count are
// rejected with ParseError. Repeated pairs are merged by summing.

WeightedGraph read_edge_list(std::istream& in);
WeightedGraph read_edge_list(const std::filesystem::path& path);

/// Writes weights with 17 significant digits so that reading back is exact.
void write_edge_list(std::ostream& out, const WeightedGraph& g);
void write_edge_list(const std::filesystem::path& path, const WeightedGraph& g);

}  // namespace kemeny
