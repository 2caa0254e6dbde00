#include "commnet/graph_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "commnet/errors.hpp"

namespace commnet::graph {

void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  for (const auto& e : g.edges()) out << e.u << '\t' << e.v << '\t' << e.weight << '\n';
  for (const auto& node : g.isolated_nodes()) out << node << "\t0\n";
}

std::string to_edge_list(const WeightedGraph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

Weight parse_weight(const std::string& text, std::size_t line_no) {
  Weight w = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), w);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw DataError("edge list line " + std::to_string(line_no) + ": bad weight '" + text + "'");
  return w;
}

}  // namespace

WeightedGraph read_edge_list(std::istream& in) {
  WeightedGraph g;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    const auto bad = [&](const char* what) {
      return DataError("edge list line " + std::to_string(line_no) + ": " + what);
    };
    if (fields.size() == 2) {
      if (fields[0].empty()) throw bad("empty node name");
      if (parse_weight(fields[1], line_no) != 0) throw bad("node line must carry weight 0");
      g.add_node(fields[0]);
    } else if (fields.size() == 3) {
      if (fields[0].empty() || fields[1].empty()) throw bad("empty node name");
      const Weight w = parse_weight(fields[2], line_no);
      if (w == 0) throw bad("edge weight must be >= 1");
      g.add_interaction(fields[0], fields[1], w);
    } else {
      throw bad("expected 2 or 3 tab-separated fields");
    }
  }
  return g;
}

WeightedGraph from_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

}  // namespace commnet::graph
