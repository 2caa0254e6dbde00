#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace commnet::pipeline {

using AliasTable = std::map<std::string, std::string>;

// Strips "Wikipedia:" and "WikiProject " prefixes, turns underscores into
// spaces, collapses whitespace, uppercases the first letter, then maps
// through the alias table (keys are compared after the same normalization).
// Throws ConfigError when nothing is left.
std::string normalize_project_name(std::string_view raw, const AliasTable& aliases = {});

// "Wikipedia:WikiProject Birds/Members" -> "Birds". nullopt for titles
// outside the project namespace or without the WikiProject prefix.
std::optional<std::string> project_of_page_title(std::string_view title, const AliasTable& aliases = {});

// File-name-safe form of a project name.
std::string project_slug(std::string_view project);

}  // namespace commnet::pipeline
