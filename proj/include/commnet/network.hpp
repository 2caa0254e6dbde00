#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "commnet/graph.hpp"
#include "commnet/wikitext_io.hpp"

namespace commnet::network {

struct BuildOptions {
  // When false, a post links a member with any other editor (the network is
  // then not a subgraph of the member set).
  bool members_only = true;
};

// One undirected interaction per post written by A on B's user talk page,
// A != B, both members. Posts from mass-message threads are skipped.
graph::WeightedGraph build_network(const std::vector<wikitext::PostRecord>& posts,
                                   const std::set<std::string>& members, const BuildOptions& options = {});

// Posts grouped by talk-page owner, so per-project builds only touch the
// pages of that project's members.
class PostIndex {
 public:
  explicit PostIndex(const std::vector<wikitext::PostRecord>& posts);
  graph::WeightedGraph build(const std::set<std::string>& members, const BuildOptions& options = {}) const;

 private:
  std::map<std::string, std::vector<const wikitext::PostRecord*>> by_owner_;
};

struct ProjectRecord {
  std::string project;
  std::set<std::string> members;
  graph::WeightedGraph network;
  std::size_t member_count = 0;
  std::size_t active_nodes = 0;       // non-isolated network nodes that are members
  double fraction_in_network = 0.0;   // active_nodes / member_count
};

// Throws DataError for an empty member set.
ProjectRecord project_record(std::string project, std::set<std::string> members, graph::WeightedGraph network);

// Keeps records with >= min_active_nodes active nodes and N_Q >= 1, in input
// order. Throws DataError naming the first project without a quality entry.
std::vector<ProjectRecord> filter_projects(const std::vector<ProjectRecord>& records,
                                           const std::map<std::string, std::size_t>& n_quality,
                                           std::size_t min_active_nodes = 5);

// Network plus every member as a node, for edge-list export.
graph::WeightedGraph network_with_members(const ProjectRecord& record);

// project,member_count,active_nodes,fraction_in_network
void write_summary_csv(std::ostream& out, const std::vector<ProjectRecord>& records);

}  // namespace commnet::network
