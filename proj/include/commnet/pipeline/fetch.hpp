#pragma once

#include <string>
#include <vector>

#include "commnet/pipeline/api_client.hpp"
#include "commnet/quality.hpp"
#include "commnet/wikitext_io.hpp"

namespace commnet::pipeline {

// Every "Wikipedia:WikiProject X" root page, normalized and sorted.
std::vector<std::string> discover_projects(ApiClient& client, const PipelineConfig& config);

// The project's root page and its subpages, sorted by title. Talk pages are
// never requested.
std::vector<wikitext::PageText> fetch_project_pages(ApiClient& client, const PipelineConfig& config,
                                                    const std::string& project);

// One record per existing "User talk:<name>" page, sorted by title. Missing
// pages are reported on stderr and skipped.
std::vector<wikitext::PageText> fetch_user_talk_pages(ApiClient& client, const PipelineConfig& config,
                                                      const std::vector<std::string>& usernames);

// Assessment rows for the given projects (names already normalized). Rows
// are raw: duplicates and non-article titles are left for the quality stage.
std::vector<quality::AssessmentRecord> fetch_assessments(ApiClient& client, const PipelineConfig& config,
                                                         const std::vector<std::string>& projects);

}  // namespace commnet::pipeline
