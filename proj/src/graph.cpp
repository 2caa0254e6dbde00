#include "commnet/graph.hpp"

#include <algorithm>
#include <cmath>

#include "commnet/errors.hpp"

namespace commnet::graph {

void WeightedGraph::add_node(const NodeId& node) { adjacency_.try_emplace(node); }

void WeightedGraph::add_interaction(const NodeId& u, const NodeId& v, Weight count) {
  if (u == v) throw DataError("self-loop rejected for node '" + u + "'");
  if (count == 0) return;
  auto& from_u = adjacency_[u];
  auto& from_v = adjacency_[v];
  auto [it, inserted] = from_u.try_emplace(v, 0);
  if (inserted) ++edge_count_;
  it->second += count;
  from_v[u] += count;
}

Weight WeightedGraph::weight(const NodeId& u, const NodeId& v) const {
  auto it = adjacency_.find(u);
  if (it == adjacency_.end()) return 0;
  auto jt = it->second.find(v);
  return jt == it->second.end() ? 0 : jt->second;
}

Weight WeightedGraph::strength(const NodeId& node) const {
  Weight total = 0;
  for (const auto& [_, w] : neighbors(node)) total += w;
  return total;
}

const std::map<NodeId, Weight>& WeightedGraph::neighbors(const NodeId& node) const {
  auto it = adjacency_.find(node);
  if (it == adjacency_.end()) throw DataError("unknown node '" + node + "'");
  return it->second;
}

std::size_t WeightedGraph::active_count() const {
  return static_cast<std::size_t>(std::count_if(adjacency_.begin(), adjacency_.end(),
                                                [](const auto& kv) { return !kv.second.empty(); }));
}

Weight WeightedGraph::total_weight() const {
  Weight total = 0;
  for (const auto& e : edges()) total += e.weight;
  return total;
}

std::vector<NodeId> WeightedGraph::nodes() const {
  std::vector<NodeId> out;
  out.reserve(adjacency_.size());
  for (const auto& [node, _] : adjacency_) out.push_back(node);
  return out;
}

std::vector<NodeId> WeightedGraph::active_nodes() const {
  std::vector<NodeId> out;
  for (const auto& [node, nbrs] : adjacency_)
    if (!nbrs.empty()) out.push_back(node);
  return out;
}

std::vector<NodeId> WeightedGraph::isolated_nodes() const {
  std::vector<NodeId> out;
  for (const auto& [node, nbrs] : adjacency_)
    if (nbrs.empty()) out.push_back(node);
  return out;
}

std::vector<WeightedGraph::Edge> WeightedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (const auto& [u, nbrs] : adjacency_)
    for (auto it = nbrs.upper_bound(u); it != nbrs.end(); ++it) out.push_back({u, it->first, it->second});
  return out;
}

double average_strength(const WeightedGraph& g) {
  const auto active = g.active_nodes();
  if (active.empty()) throw DataError("average strength undefined: no non-isolated nodes");
  double total = 0.0;
  for (const auto& node : active) total += static_cast<double>(g.strength(node));
  return total / static_cast<double>(active.size());
}

double TransitionMatrix::entry(std::size_t i, std::size_t j) const {
  const auto& row = rows.at(i);
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const auto& cell, std::size_t col) { return cell.first < col; });
  return (it != row.end() && it->first == j) ? it->second : 0.0;
}

TransitionMatrix transition_matrix(const WeightedGraph& g) {
  TransitionMatrix tm;
  tm.labels = g.nodes();
  std::map<NodeId, std::size_t> index;
  for (std::size_t i = 0; i < tm.labels.size(); ++i) index.emplace(tm.labels[i], i);

  tm.rows.resize(tm.labels.size());
  tm.active.assign(tm.labels.size(), false);
  for (std::size_t i = 0; i < tm.labels.size(); ++i) {
    const auto& nbrs = g.neighbors(tm.labels[i]);
    if (nbrs.empty()) continue;
    Weight strength = 0;
    for (const auto& [_, w] : nbrs) strength += w;
    auto& row = tm.rows[i];
    row.reserve(nbrs.size());
    for (const auto& [v, w] : nbrs)
      row.emplace_back(index.at(v), static_cast<double>(w) / static_cast<double>(strength));
    tm.active[i] = true;
    ++tm.active_count;
  }
  return tm;
}

double entropy_bits(const std::vector<double>& distribution) {
  double h = 0.0;
  for (double p : distribution)
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

namespace {

double row_entropy(const std::vector<std::pair<std::size_t, double>>& row) {
  double h = 0.0;
  for (const auto& [_, p] : row)
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

void require_active(const TransitionMatrix& tm) {
  if (tm.active_count < 2)
    throw DataError("structure metrics need at least 2 non-isolated nodes, got " +
                    std::to_string(tm.active_count));
}

double determinism_of(const TransitionMatrix& tm) {
  require_active(tm);
  const double n = static_cast<double>(tm.active_count);
  double sum = 0.0;
  for (std::size_t i = 0; i < tm.size(); ++i)
    if (tm.active[i]) sum += row_entropy(tm.rows[i]);
  return std::log2(n) - sum / n;
}

double degeneracy_of(const TransitionMatrix& tm) {
  require_active(tm);
  const double n = static_cast<double>(tm.active_count);
  std::vector<double> mean_row(tm.size(), 0.0);
  for (std::size_t i = 0; i < tm.size(); ++i)
    if (tm.active[i])
      for (const auto& [j, p] : tm.rows[i]) mean_row[j] += p;
  for (double& p : mean_row) p /= n;
  return std::log2(n) - entropy_bits(mean_row);
}

}  // namespace

double determinism(const WeightedGraph& g) { return determinism_of(transition_matrix(g)); }

double degeneracy(const WeightedGraph& g) { return degeneracy_of(transition_matrix(g)); }

StructureMetrics effective_information(const WeightedGraph& g) {
  const auto tm = transition_matrix(g);
  StructureMetrics m;
  m.active_n = tm.active_count;
  m.determinism_bits = determinism_of(tm);
  m.degeneracy_bits = degeneracy_of(tm);
  m.effective_information_bits = m.determinism_bits - m.degeneracy_bits;
  const double scale = std::log2(static_cast<double>(m.active_n));
  m.determinism_norm = m.determinism_bits / scale;
  m.degeneracy_norm = m.degeneracy_bits / scale;
  m.effective_information_norm = m.determinism_norm - m.degeneracy_norm;
  return m;
}

}  // namespace commnet::graph
