#include "commnet/network.hpp"

#include <ostream>

#include "commnet/csv.hpp"
#include "commnet/errors.hpp"

namespace commnet::network {

namespace {

bool counts(const wikitext::PostRecord& post, const std::set<std::string>& members, const BuildOptions& options) {
  if (post.mass_message || post.author == post.page_owner) return false;
  const bool author_in = members.count(post.author) != 0;
  const bool owner_in = members.count(post.page_owner) != 0;
  return options.members_only ? (author_in && owner_in) : (author_in || owner_in);
}

}  // namespace

graph::WeightedGraph build_network(const std::vector<wikitext::PostRecord>& posts,
                                   const std::set<std::string>& members, const BuildOptions& options) {
  graph::WeightedGraph g;
  for (const auto& post : posts)
    if (counts(post, members, options)) g.add_interaction(post.author, post.page_owner);
  return g;
}

PostIndex::PostIndex(const std::vector<wikitext::PostRecord>& posts) {
  for (const auto& post : posts) by_owner_[post.page_owner].push_back(&post);
}

graph::WeightedGraph PostIndex::build(const std::set<std::string>& members, const BuildOptions& options) const {
  graph::WeightedGraph g;
  auto add_page = [&](const std::vector<const wikitext::PostRecord*>& page_posts) {
    for (const auto* post : page_posts)
      if (counts(*post, members, options)) g.add_interaction(post->author, post->page_owner);
  };
  if (options.members_only) {
    for (const auto& member : members)
      if (auto it = by_owner_.find(member); it != by_owner_.end()) add_page(it->second);
  } else {
    for (const auto& [_, page_posts] : by_owner_) add_page(page_posts);
  }
  return g;
}

ProjectRecord project_record(std::string project, std::set<std::string> members, graph::WeightedGraph network) {
  if (members.empty()) throw DataError("project '" + project + "' has no members");
  ProjectRecord r;
  r.project = std::move(project);
  r.member_count = members.size();
  for (const auto& node : network.active_nodes())
    if (members.count(node)) ++r.active_nodes;
  r.fraction_in_network = static_cast<double>(r.active_nodes) / static_cast<double>(r.member_count);
  r.members = std::move(members);
  r.network = std::move(network);
  return r;
}

std::vector<ProjectRecord> filter_projects(const std::vector<ProjectRecord>& records,
                                           const std::map<std::string, std::size_t>& n_quality,
                                           std::size_t min_active_nodes) {
  std::vector<ProjectRecord> kept;
  for (const auto& r : records) {
    auto it = n_quality.find(r.project);
    if (it == n_quality.end()) throw DataError("no quality entry for project '" + r.project + "'");
    if (r.network.active_count() >= min_active_nodes && it->second >= 1) kept.push_back(r);
  }
  return kept;
}

graph::WeightedGraph network_with_members(const ProjectRecord& record) {
  graph::WeightedGraph g = record.network;
  for (const auto& member : record.members) g.add_node(member);
  return g;
}

void write_summary_csv(std::ostream& out, const std::vector<ProjectRecord>& records) {
  csv::write_row(out, {"project", "member_count", "active_nodes", "fraction_in_network"});
  for (const auto& r : records)
    csv::write_row(out, {r.project, std::to_string(r.member_count), std::to_string(r.active_nodes),
                         csv::fixed(r.fraction_in_network)});
}

}  // namespace commnet::network
