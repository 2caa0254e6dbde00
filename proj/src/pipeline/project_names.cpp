#include "commnet/pipeline/project_names.hpp"

#include <cctype>

#include "commnet/errors.hpp"
#include "commnet/wikitext.hpp"

namespace commnet::pipeline {

namespace {

bool starts_with_icase(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char a = s[i] == '_' ? ' ' : s[i];
    char b = prefix[i];
    if (std::tolower(static_cast<unsigned char>(a)) != std::tolower(static_cast<unsigned char>(b))) return false;
  }
  return true;
}

std::string_view trim_left(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '_' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

std::string strip_prefixes(std::string_view raw) {
  std::string_view s = trim_left(raw);
  if (starts_with_icase(s, "Wikipedia:")) s = trim_left(s.substr(10));
  if (starts_with_icase(s, "WP:")) s = trim_left(s.substr(3));
  if (starts_with_icase(s, "WikiProject ")) s = trim_left(s.substr(12));
  return wikitext::canonical_username(s);
}

}  // namespace

std::string normalize_project_name(std::string_view raw, const AliasTable& aliases) {
  std::string name = strip_prefixes(raw);
  if (name.empty()) throw ConfigError("project name '" + std::string(raw) + "' is empty after normalization");
  for (const auto& [from, to] : aliases) {
    if (strip_prefixes(from) == name) {
      name = strip_prefixes(to);
      if (name.empty()) throw ConfigError("alias for '" + std::string(raw) + "' normalizes to an empty name");
      break;
    }
  }
  return name;
}

std::optional<std::string> project_of_page_title(std::string_view title, const AliasTable& aliases) {
  std::string_view s = trim_left(title);
  if (!starts_with_icase(s, "Wikipedia:")) return std::nullopt;
  s = trim_left(s.substr(10));
  if (!starts_with_icase(s, "WikiProject ")) return std::nullopt;
  s = s.substr(0, s.find('/'));
  if (trim_left(s.substr(12)).empty()) return std::nullopt;
  return normalize_project_name(s, aliases);
}

std::string project_slug(std::string_view project) {
  std::string out;
  for (char c : project) {
    const auto u = static_cast<unsigned char>(c);
    out.push_back(std::isalnum(u) || c == '-' || c == '.' ? c : '_');
  }
  return out;
}

}  // namespace commnet::pipeline
