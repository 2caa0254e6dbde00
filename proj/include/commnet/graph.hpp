#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace commnet::graph {

using NodeId = std::string;
using Weight = std::uint64_t;

// Undirected graph with positive integer edge weights counting interactions.
// Each unordered pair is stored once in both adjacency directions, so
// weight(u, v) == weight(v, u) holds structurally. Self-loops are rejected.
class WeightedGraph {
 public:
  struct Edge {
    NodeId u;  // u < v
    NodeId v;
    Weight weight;
  };

  void add_node(const NodeId& node);
  // Adds `count` interactions between u and v. Throws DataError when u == v.
  void add_interaction(const NodeId& u, const NodeId& v, Weight count = 1);

  bool contains(const NodeId& node) const { return adjacency_.count(node) != 0; }
  Weight weight(const NodeId& u, const NodeId& v) const;
  // Sum of incident edge weights. Throws DataError for unknown nodes.
  Weight strength(const NodeId& node) const;

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::size_t active_count() const;
  Weight total_weight() const;

  // Sorted node names.
  std::vector<NodeId> nodes() const;
  std::vector<NodeId> active_nodes() const;
  std::vector<NodeId> isolated_nodes() const;
  // Edges sorted by (u, v) with u < v.
  std::vector<Edge> edges() const;
  const std::map<NodeId, Weight>& neighbors(const NodeId& node) const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  std::map<NodeId, std::map<NodeId, Weight>> adjacency_;
  std::size_t edge_count_ = 0;
};

// Mean node strength over non-isolated nodes. Throws DataError if none.
double average_strength(const WeightedGraph& g);

// Row-stochastic random-walk matrix over the graph's nodes (sorted order).
// Rows are sparse: (column index, probability) pairs in column order.
struct TransitionMatrix {
  std::vector<NodeId> labels;
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;
  std::vector<bool> active;
  std::size_t active_count = 0;

  std::size_t size() const { return labels.size(); }
  double entry(std::size_t i, std::size_t j) const;
};

TransitionMatrix transition_matrix(const WeightedGraph& g);

// Shannon entropy in bits, with 0 log 0 = 0.
double entropy_bits(const std::vector<double>& distribution);

struct StructureMetrics {
  double determinism_bits = 0.0;
  double degeneracy_bits = 0.0;
  double effective_information_bits = 0.0;
  double determinism_norm = 0.0;
  double degeneracy_norm = 0.0;
  double effective_information_norm = 0.0;
  std::size_t active_n = 0;
};

// Random-walk structure metrics, computed over non-isolated nodes only:
//   determinism = log2 n - mean_i H(W_i)
//   degeneracy  = log2 n - H(mean_i W_i)
// with n the number of non-isolated nodes. All throw DataError when n < 2.
double determinism(const WeightedGraph& g);
double degeneracy(const WeightedGraph& g);
StructureMetrics effective_information(const WeightedGraph& g);

}  // namespace commnet::graph
