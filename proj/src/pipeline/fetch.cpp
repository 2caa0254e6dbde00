#include "commnet/pipeline/fetch.hpp"

#include <algorithm>
#include <iostream>
#include <json.hpp>
#include <set>

#include "commnet/errors.hpp"
#include "commnet/wikitext.hpp"

namespace commnet::pipeline {

using nlohmann::json;

namespace {

json parse_body(const std::string& body) {
  auto j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw DataError("API response is not a JSON object");
  return j;
}

// query.pages as a list, for both formatversion=1 (object) and 2 (array).
std::vector<json> query_pages(const json& response) {
  std::vector<json> out;
  if (!response.contains("query")) return out;
  const json& query = response["query"];
  if (!query.contains("pages")) return out;
  const json& pages = query["pages"];
  if (pages.is_array()) {
    for (const auto& p : pages) out.push_back(p);
  } else if (pages.is_object()) {
    for (const auto& [_, p] : pages.items()) out.push_back(p);
  }
  return out;
}

bool is_missing(const json& page) {
  return page.contains("missing") || page.contains("invalid");
}

const json* first_element(const json& j) {
  if (j.is_array() && !j.empty()) return &j[0];
  if (j.is_object() && !j.empty()) return &j.begin().value();
  return nullptr;
}

// Wikitext from a cirrusdoc or revisions page record.
std::optional<std::string> page_wikitext(const json& page) {
  if (page.contains("cirrusdoc")) {
    if (const json* doc = first_element(page["cirrusdoc"])) {
      if (doc->contains("source") && (*doc)["source"].contains("source_text"))
        return (*doc)["source"]["source_text"].get<std::string>();
    }
  }
  if (page.contains("revisions")) {
    if (const json* rev = first_element(page["revisions"])) {
      if (rev->contains("slots") && (*rev)["slots"].contains("main")) {
        const json& main = (*rev)["slots"]["main"];
        if (main.contains("content")) return main["content"].get<std::string>();
        if (main.contains("*")) return main["*"].get<std::string>();
      }
      if (rev->contains("content")) return (*rev)["content"].get<std::string>();
      if (rev->contains("*")) return (*rev)["*"].get<std::string>();
    }
  }
  return std::nullopt;
}

std::string join_titles(const std::vector<std::string>& titles, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) out.push_back('|');
    out += titles[i];
  }
  return out;
}

// Fetches content for `titles` in batches. Titles that come back missing or
// without content are reported and skipped.
std::vector<wikitext::PageText> fetch_contents(ApiClient& client, const ApiQueries::Params& base,
                                               std::size_t batch, const std::vector<std::string>& titles,
                                               const char* what) {
  std::map<std::string, wikitext::PageText> found;
  std::set<std::string> reported;
  for (std::size_t begin = 0; begin < titles.size(); begin += batch) {
    const std::size_t end = std::min(titles.size(), begin + batch);
    Params params = base;
    params["titles"] = join_titles(titles, begin, end);
    for (const auto& body : client.get_all(params)) {
      for (const auto& page : query_pages(parse_body(body))) {
        const std::string title = page.value("title", "");
        if (title.empty()) continue;
        if (is_missing(page)) {
          if (reported.insert(title).second) std::cerr << "commnet: skipping missing " << what << " " << title << "\n";
          continue;
        }
        if (auto text = page_wikitext(page)) found[title] = wikitext::PageText{title, std::move(*text)};
      }
    }
  }
  for (const auto& title : titles) {
    if (!found.count(title) && !reported.count(title))
      std::cerr << "commnet: no content returned for " << what << " " << title << "\n";
  }
  std::vector<wikitext::PageText> out;
  for (auto& [_, page] : found) out.push_back(std::move(page));
  return out;
}

std::vector<std::string> allpages_titles(ApiClient& client, Params params) {
  std::vector<std::string> titles;
  for (const auto& body : client.get_all(params)) {
    const json j = parse_body(body);
    if (!j.contains("query") || !j["query"].contains("allpages")) continue;
    for (const auto& p : j["query"]["allpages"]) titles.push_back(p.value("title", ""));
  }
  return titles;
}

quality::Grade grade_of(const json& assessment) {
  if (!assessment.is_object() || !assessment.contains("class")) return quality::Grade::Other;
  const json& c = assessment["class"];
  return c.is_string() ? quality::parse_grade(c.get<std::string>()) : quality::Grade::Other;
}

}  // namespace

std::vector<std::string> discover_projects(ApiClient& client, const PipelineConfig& config) {
  std::set<std::string> projects;
  for (const auto& title : allpages_titles(client, config.api.project_list)) {
    if (title.find('/') != std::string::npos || wikitext::is_talk_title(title)) continue;
    if (auto name = project_of_page_title(title, config.project_aliases)) projects.insert(*name);
  }
  return {projects.begin(), projects.end()};
}

std::vector<wikitext::PageText> fetch_project_pages(ApiClient& client, const PipelineConfig& config,
                                                    const std::string& project) {
  const std::string root = "Wikipedia:WikiProject " + project;
  Params params = config.api.project_page_list;
  params["apprefix"] = "WikiProject " + project;
  std::vector<std::string> titles;
  for (const auto& title : allpages_titles(client, params)) {
    if (title != root && title.rfind(root + "/", 0) != 0) continue;
    if (wikitext::is_talk_title(title)) continue;
    titles.push_back(title);
  }
  std::sort(titles.begin(), titles.end());
  titles.erase(std::unique(titles.begin(), titles.end()), titles.end());
  return fetch_contents(client, config.api.project_page_content, config.api.titles_per_request, titles,
                        "project page");
}

std::vector<wikitext::PageText> fetch_user_talk_pages(ApiClient& client, const PipelineConfig& config,
                                                      const std::vector<std::string>& usernames) {
  std::set<std::string> unique;
  for (const auto& u : usernames) unique.insert("User talk:" + wikitext::canonical_username(u));
  const std::vector<std::string> titles(unique.begin(), unique.end());
  return fetch_contents(client, config.api.talk_pages, config.api.titles_per_request, titles, "user talk page");
}

std::vector<quality::AssessmentRecord> fetch_assessments(ApiClient& client, const PipelineConfig& config,
                                                         const std::vector<std::string>& projects) {
  std::vector<quality::AssessmentRecord> rows;
  if (config.api.assessment_mode == "projectpages") {
    for (const auto& project : projects) {
      Params params = config.api.project_assessments;
      params["wppprojects"] = project;
      for (const auto& body : client.get_all(params)) {
        const json j = parse_body(body);
        if (!j.contains("query") || !j["query"].contains("projects")) continue;
        for (const auto& [_, pages] : j["query"]["projects"].items()) {
          for (const auto& page : pages) {
            const json none;
            rows.push_back({project, page.value("title", ""),
                            grade_of(page.contains("assessment") ? page["assessment"] : none)});
          }
        }
      }
    }
  } else if (config.api.assessment_mode == "allpages") {
    const std::set<std::string> wanted(projects.begin(), projects.end());
    for (const auto& body : client.get_all(config.api.all_assessments)) {
      for (const auto& page : query_pages(parse_body(body))) {
        if (!page.contains("pageassessments")) continue;
        const std::string title = page.value("title", "");
        for (const auto& [name, assessment] : page["pageassessments"].items()) {
          std::string project;
          try {
            project = normalize_project_name(name, config.project_aliases);
          } catch (const ConfigError&) {
            continue;
          }
          if (!wanted.count(project)) continue;
          rows.push_back({project, title, grade_of(assessment)});
        }
      }
    }
  } else {
    throw ConfigError("unknown assessment_mode '" + config.api.assessment_mode + "'");
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.project, a.article, a.grade) < std::tie(b.project, b.article, b.grade);
  });
  return rows;
}

}  // namespace commnet::pipeline
