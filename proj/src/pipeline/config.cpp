#include "commnet/pipeline/config.hpp"

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "commnet/errors.hpp"

namespace commnet::pipeline {

using nlohmann::json;

void PipelineConfig::validate() const {
  if (!(request_interval > 0.0)) throw ConfigError("request_interval must be > 0");
  if (min_active_nodes < 2) throw ConfigError("min_active_nodes must be >= 2");
  if (max_retries < 0) throw ConfigError("max_retries must be >= 0");
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must lie in [0, 1]");
  if (api_base_url.empty()) throw ConfigError("api_base_url is empty");
  if (api.titles_per_request == 0) throw ConfigError("api.titles_per_request must be >= 1");
  if (api.assessment_mode != "projectpages" && api.assessment_mode != "allpages")
    throw ConfigError("api.assessment_mode must be 'projectpages' or 'allpages'");
}

namespace {

void merge_params(const json& j, ApiQueries::Params& params, const std::string& key) {
  if (!j.is_object()) throw ConfigError("api." + key + " must be an object of string parameters");
  for (const auto& [name, value] : j.items()) {
    if (value.is_null()) {
      params.erase(name);
    } else if (value.is_string()) {
      params[name] = value.get<std::string>();
    } else {
      throw ConfigError("api." + key + "." + name + " must be a string or null");
    }
  }
}

}  // namespace

PipelineConfig config_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  static const std::set<std::string> known{"api_base_url",  "user_agent",           "request_interval",
                                           "max_retries",   "cache_directory",      "projects",
                                           "p",             "min_active_nodes",     "delivery_agents",
                                           "mass_message_markers", "project_aliases", "members_only",
                                           "snapshot_date", "offline",              "api"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");

  PipelineConfig c;
  try {
    c.api_base_url = j.value("api_base_url", c.api_base_url);
    c.user_agent = j.value("user_agent", c.user_agent);
    c.request_interval = j.value("request_interval", c.request_interval);
    c.max_retries = j.value("max_retries", c.max_retries);
    if (j.contains("cache_directory")) c.cache_directory = j.at("cache_directory").get<std::string>();
    c.projects = j.value("projects", c.projects);
    c.p = j.value("p", c.p);
    if (j.contains("min_active_nodes")) {
      const auto v = j.at("min_active_nodes").get<long long>();
      if (v < 0) throw ConfigError("min_active_nodes must be >= 2");
      c.min_active_nodes = static_cast<std::size_t>(v);
    }
    c.delivery_agents = j.value("delivery_agents", c.delivery_agents);
    c.mass_message_markers = j.value("mass_message_markers", c.mass_message_markers);
    c.project_aliases = j.value("project_aliases", c.project_aliases);
    c.members_only = j.value("members_only", c.members_only);
    c.snapshot_date = j.value("snapshot_date", c.snapshot_date);
    c.offline = j.value("offline", c.offline);
    if (j.contains("api")) {
      const json& api = j.at("api");
      if (!api.is_object()) throw ConfigError("api must be an object");
      static const std::map<std::string, ApiQueries::Params ApiQueries::*> families{
          {"talk_pages", &ApiQueries::talk_pages},
          {"project_page_list", &ApiQueries::project_page_list},
          {"project_page_content", &ApiQueries::project_page_content},
          {"project_assessments", &ApiQueries::project_assessments},
          {"all_assessments", &ApiQueries::all_assessments},
          {"project_list", &ApiQueries::project_list}};
      for (const auto& [key, value] : api.items()) {
        if (key == "titles_per_request") {
          c.api.titles_per_request = value.get<std::size_t>();
        } else if (key == "assessment_mode") {
          c.api.assessment_mode = value.get<std::string>();
        } else if (auto it = families.find(key); it != families.end()) {
          merge_params(value, c.api.*(it->second), key);
        } else {
          throw ConfigError("unknown api config key '" + key + "'");
        }
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config has a value of the wrong type: ") + e.what());
  }
  c.validate();
  return c;
}

void apply_environment(PipelineConfig& config) {
  if (const char* url = std::getenv("COMMNET_API_BASE_URL"); url && *url) config.api_base_url = url;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  PipelineConfig c = config_from_json(buffer.str());
  if (c.cache_directory.is_relative()) c.cache_directory = path.parent_path() / c.cache_directory;
  apply_environment(c);
  c.validate();
  return c;
}

}  // namespace commnet::pipeline
