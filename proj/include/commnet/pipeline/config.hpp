#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "commnet/pipeline/project_names.hpp"

namespace commnet::pipeline {

// API query parameters per request family. Defaults target the MediaWiki
// Action API (formatversion=2); any key may be overridden from the config.
struct ApiQueries {
  using Params = std::map<std::string, std::string>;
  Params talk_pages{{"action", "query"}, {"prop", "cirrusdoc"}, {"format", "json"}, {"formatversion", "2"}};
  Params project_page_list{{"action", "query"}, {"list", "allpages"}, {"apnamespace", "4"},
                           {"aplimit", "max"},  {"format", "json"},   {"formatversion", "2"}};
  Params project_page_content{{"action", "query"}, {"prop", "revisions"}, {"rvprop", "content"},
                              {"rvslots", "main"}, {"format", "json"},    {"formatversion", "2"}};
  Params project_assessments{{"action", "query"}, {"list", "projectpages"}, {"wppassessments", "1"},
                             {"wpplimit", "max"}, {"format", "json"},      {"formatversion", "2"}};
  Params all_assessments{{"action", "query"}, {"generator", "allpages"}, {"gapnamespace", "0"},
                         {"gaplimit", "max"}, {"prop", "pageassessments"}, {"palimit", "max"},
                         {"format", "json"},  {"formatversion", "2"}};
  Params project_list{{"action", "query"}, {"list", "allpages"}, {"apnamespace", "4"},
                      {"apprefix", "WikiProject "}, {"aplimit", "max"}, {"format", "json"},
                      {"formatversion", "2"}};
  std::size_t titles_per_request = 50;
  // "projectpages": one paginated listing per project.
  // "allpages": one traversal of every main-namespace article.
  std::string assessment_mode = "projectpages";
};

struct PipelineConfig {
  std::string api_base_url = "https://en.wikipedia.org/w/api.php";
  std::string user_agent = "commnet/1.0 (research crawler; contact via project README)";
  double request_interval = 1.0;  // seconds between requests
  int max_retries = 5;
  std::filesystem::path cache_directory = "cache";
  std::vector<std::string> projects;  // empty: discover every WikiProject
  double p = 0.5;
  std::size_t min_active_nodes = 5;
  std::vector<std::string> delivery_agents{"MediaWiki message delivery"};
  std::vector<std::string> mass_message_markers{"<!-- Message sent by User:"};
  AliasTable project_aliases;
  bool members_only = true;
  std::string snapshot_date = "unspecified";
  bool offline = false;
  ApiQueries api;

  // Throws ConfigError on violated invariants.
  void validate() const;
};

// Reads a JSON config file. Unknown keys are rejected. The environment
// variable COMMNET_API_BASE_URL overrides api_base_url.
PipelineConfig load_config(const std::filesystem::path& path);
PipelineConfig config_from_json(const std::string& json_text);
void apply_environment(PipelineConfig& config);

}  // namespace commnet::pipeline
