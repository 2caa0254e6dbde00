#include "commnet/quality.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>
#include <tuple>

#include "commnet/csv.hpp"
#include "commnet/errors.hpp"

namespace commnet::quality {

namespace {

std::string lower(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '_') c = ' ';
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

constexpr std::array<std::string_view, 28> kNamespaces = {
    "talk",     "user",          "user talk",      "wikipedia",      "wikipedia talk", "project",
    "file",     "file talk",     "image",          "mediawiki",      "template",       "template talk",
    "help",     "help talk",     "category",       "category talk",  "portal",         "portal talk",
    "draft",    "draft talk",    "module",         "module talk",    "book",           "book talk",
    "timedtext", "special",      "wp",             "wt"};

}  // namespace

Grade parse_grade(std::string_view text) {
  const std::string g = lower(trim(text));
  if (g == "fa") return Grade::FA;
  if (g == "ga") return Grade::GA;
  return Grade::Other;
}

std::string_view grade_name(Grade g) {
  switch (g) {
    case Grade::FA:
      return "FA";
    case Grade::GA:
      return "GA";
    case Grade::Other:
      break;
  }
  return "Other";
}

bool outside_main_namespace(std::string_view title) {
  const auto colon = title.find(':');
  if (colon == std::string_view::npos) return false;
  const std::string prefix = lower(trim(title.substr(0, colon)));
  return std::find(kNamespaces.begin(), kNamespaces.end(), prefix) != kNamespaces.end();
}

std::vector<AssessmentRecord> deduplicate(const std::vector<AssessmentRecord>& records) {
  std::map<std::pair<std::string, std::string>, Grade> best;
  for (const auto& r : records) {
    if (outside_main_namespace(r.article)) continue;
    auto [it, inserted] = best.try_emplace({r.project, r.article}, r.grade);
    if (!inserted && r.grade > it->second) it->second = r.grade;
  }
  std::vector<AssessmentRecord> out;
  out.reserve(best.size());
  for (const auto& [key, grade] : best) out.push_back({key.first, key.second, grade});
  return out;
}

QualityCounts count_quality(const std::vector<AssessmentRecord>& project_records) {
  if (project_records.empty()) throw DataError("quality undefined: project has no assessed articles");
  QualityCounts c;
  c.n_articles = project_records.size();
  for (const auto& r : project_records) {
    if (r.grade == Grade::FA) ++c.n_fa;
    if (r.grade == Grade::GA) ++c.n_ga;
  }
  c.n_quality = c.n_fa + c.n_ga;
  return c;
}

QualityScore q_score(std::size_t n_quality, std::size_t n_articles, double p) {
  if (n_articles == 0) throw DataError("quality score needs at least one article in scope");
  if (n_quality > n_articles) throw DataError("more quality articles than articles in scope");
  if (!(p >= 0.0 && p <= 1.0)) throw DataError("quality exponent p must lie in [0, 1]");
  QualityScore s;
  s.n_articles = n_articles;
  s.n_quality = n_quality;
  s.p = p;
  s.score = static_cast<double>(n_quality) / std::pow(static_cast<double>(n_articles), p);
  if (n_quality >= 1) s.log_score = std::log(s.score);
  return s;
}

std::vector<AssessmentRecord> read_assessments_csv(std::istream& in) {
  csv::Reader reader(in);
  std::vector<std::string> row;
  std::vector<AssessmentRecord> out;
  if (!reader.next(row)) return out;
  if (row.size() < 3 || row[0] != "project" || row[1] != "article" || row[2] != "grade")
    throw DataError("assessments csv: expected header project,article,grade");
  while (reader.next(row)) {
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != 3)
      throw DataError("assessments csv line " + std::to_string(reader.line()) + ": expected 3 fields");
    out.push_back({row[0], row[1], parse_grade(row[2])});
  }
  return out;
}

void write_assessments_csv(std::ostream& out, const std::vector<AssessmentRecord>& records) {
  csv::write_row(out, {"project", "article", "grade"});
  for (const auto& r : records) csv::write_row(out, {r.project, r.article, std::string(grade_name(r.grade))});
}

std::vector<ProjectQuality> score_projects(const std::vector<AssessmentRecord>& records, double p) {
  std::map<std::string, std::vector<AssessmentRecord>> by_project;
  for (auto& r : deduplicate(records)) by_project[r.project].push_back(std::move(r));
  std::vector<ProjectQuality> out;
  for (const auto& [project, rows] : by_project) {
    const auto counts = count_quality(rows);
    out.push_back({project, counts, q_score(counts.n_quality, counts.n_articles, p)});
  }
  return out;
}

void write_quality_csv(std::ostream& out, const std::vector<ProjectQuality>& rows) {
  csv::write_row(out, {"project", "n_articles", "n_quality", "q_score"});
  for (const auto& r : rows)
    csv::write_row(out, {r.project, std::to_string(r.counts.n_articles), std::to_string(r.counts.n_quality),
                         csv::fixed(r.score.score)});
}

void write_grade_counts_csv(std::ostream& out, const std::vector<ProjectQuality>& rows) {
  csv::write_row(out, {"project", "n_fa", "n_ga"});
  for (const auto& r : rows)
    csv::write_row(out, {r.project, std::to_string(r.counts.n_fa), std::to_string(r.counts.n_ga)});
}

}  // namespace commnet::quality
