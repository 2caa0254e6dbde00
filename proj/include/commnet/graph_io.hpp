#pragma once

#include <iosfwd>
#include <string>

#include "commnet/graph.hpp"

namespace commnet::graph {

// Tab-separated edge list: "<u>\t<v>\t<weight>" per edge (u < v, sorted),
// followed by "<node>\t0" for every isolated node.
void write_edge_list(std::ostream& out, const WeightedGraph& g);
std::string to_edge_list(const WeightedGraph& g);

// Accepts both line forms above. Blank lines are skipped; malformed lines
// throw DataError with the line number.
WeightedGraph read_edge_list(std::istream& in);
WeightedGraph from_edge_list(const std::string& text);

}  // namespace commnet::graph
