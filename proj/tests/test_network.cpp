#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "commnet/errors.hpp"
#include "commnet/network.hpp"

using namespace commnet;
using namespace commnet::network;
using wikitext::PostRecord;

namespace {

PostRecord post(const std::string& owner, const std::string& author, bool mass = false) {
  return PostRecord{owner, "thread", author, wikitext::Timestamp{}, 0, mass};
}

std::vector<PostRecord> random_posts(std::mt19937_64& rng, std::size_t count, int people) {
  std::vector<PostRecord> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto owner = "u" + std::to_string(rng() % people);
    const auto author = "u" + std::to_string(rng() % people);
    out.push_back(post(owner, author, rng() % 10 == 0));
  }
  return out;
}

std::set<std::string> first_members(int k) {
  std::set<std::string> m;
  for (int i = 0; i < k; ++i) m.insert("u" + std::to_string(i));
  return m;
}

}  // namespace

TEST_CASE("posts become undirected interactions") {
  const std::set<std::string> members{"A", "B", "C"};
  auto g = build_network({post("B", "A"), post("B", "A"), post("A", "B")}, members);
  CHECK(g.weight("A", "B") == 3);

  g = build_network({post("A", "A")}, members);
  CHECK(g.edge_count() == 0);
  CHECK(g.node_count() == 0);

  g = build_network({post("D", "A")}, members);
  CHECK(g.edge_count() == 0);

  g = build_network({post("B", "A", true)}, members);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("members_only switch") {
  const std::set<std::string> members{"A", "B"};
  const std::vector<PostRecord> posts{post("X", "A"), post("A", "Y"), post("X", "Y"), post("B", "A")};
  auto strict = build_network(posts, members);
  CHECK(strict.total_weight() == 1);
  auto loose = build_network(posts, members, BuildOptions{false});
  CHECK(loose.total_weight() == 3);
  CHECK(loose.weight("A", "X") == 1);
  CHECK(loose.weight("A", "Y") == 1);
  CHECK(loose.weight("X", "Y") == 0);
  // fraction only counts members
  auto rec = project_record("P", members, loose);
  CHECK(rec.active_nodes == 2);
  CHECK(rec.fraction_in_network == 1.0);
}

TEST_CASE("project_record") {
  std::set<std::string> members;
  for (int i = 0; i < 10; ++i) members.insert("m" + std::to_string(i));
  graph::WeightedGraph g;
  g.add_interaction("m0", "m1");
  g.add_interaction("m2", "m3");
  g.add_interaction("m3", "m4");
  auto r = project_record("P", members, g);
  CHECK(r.member_count == 10);
  CHECK(r.active_nodes == 5);
  CHECK(r.fraction_in_network == 0.5);

  r = project_record("P", members, graph::WeightedGraph{});
  CHECK(r.fraction_in_network == 0.0);
  CHECK_THROWS_AS(project_record("P", {}, graph::WeightedGraph{}), DataError);
}

TEST_CASE("filter_projects") {
  auto make = [](const std::string& name, int active) {
    std::set<std::string> members;
    graph::WeightedGraph g;
    for (int i = 0; i < active + 2; ++i) members.insert(name + std::to_string(i));
    for (int i = 1; i < active; ++i) g.add_interaction(name + "0", name + std::to_string(i));
    return project_record(name, members, g);
  };
  const std::vector<ProjectRecord> records{make("four", 4), make("five", 5), make("noq", 8), make("six", 6)};
  const std::map<std::string, std::size_t> nq{{"four", 3}, {"five", 2}, {"noq", 0}, {"six", 1}};
  const auto kept = filter_projects(records, nq);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].project == "five");
  CHECK(kept[1].project == "six");
  CHECK(filter_projects(kept, nq).size() == kept.size());

  try {
    (void)filter_projects(records, {{"four", 1}});
    FAIL("expected an error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("five") != std::string::npos);
  }
}

TEST_CASE("network properties on random posts") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 200; ++rep) {
    const auto members = first_members(6);
    auto posts = random_posts(rng, 60, 9);
    const auto g = build_network(posts, members);

    // counted posts == total weight
    std::size_t counted = 0;
    for (const auto& p : posts)
      if (!p.mass_message && p.author != p.page_owner && members.count(p.author) && members.count(p.page_owner))
        ++counted;
    CHECK(g.total_weight() == counted);

    // nodes are members
    for (const auto& n : g.nodes()) CHECK(members.count(n) == 1);

    // order does not matter
    auto shuffled = posts;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(build_network(shuffled, members) == g);

    // the index gives the same graph
    CHECK(PostIndex(posts).build(members) == g);

    // adding posts never removes weight
    auto more = posts;
    for (auto& p : random_posts(rng, 10, 9)) more.push_back(p);
    const auto bigger = build_network(more, members);
    for (const auto& e : g.edges()) CHECK(bigger.weight(e.u, e.v) >= e.weight);
  }
}

TEST_CASE("summary CSV and edge-list export") {
  graph::WeightedGraph g;
  g.add_interaction("A", "B", 2);
  auto rec = project_record("Tropical cyclones", {"A", "B", "C, Jr."}, g);
  const auto full = network_with_members(rec);
  CHECK(full.node_count() == 3);
  CHECK(full.isolated_nodes() == std::vector<std::string>{"C, Jr."});
  std::ostringstream out;
  write_summary_csv(out, {rec});
  CHECK(out.str() ==
        "project,member_count,active_nodes,fraction_in_network\n"
        "Tropical cyclones,3,2,0.666666667\n");
}
