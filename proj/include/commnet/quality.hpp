#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace commnet::quality {

enum class Grade { Other = 0, GA = 1, FA = 2 };

// "FA"/"GA" in any case; everything else is Other.
Grade parse_grade(std::string_view text);
std::string_view grade_name(Grade g);

struct AssessmentRecord {
  std::string project;
  std::string article;
  Grade grade = Grade::Other;

  friend bool operator==(const AssessmentRecord&, const AssessmentRecord&) = default;
};

// True when the title carries a non-article namespace prefix (Talk:,
// Category:, Template:, ...). Titles without one are treated as articles.
bool outside_main_namespace(std::string_view title);

// One record per (project, article), keeping the highest grade. Drops titles
// outside the main namespace. Output sorted by (project, article).
std::vector<AssessmentRecord> deduplicate(const std::vector<AssessmentRecord>& records);

struct QualityCounts {
  std::size_t n_articles = 0;
  std::size_t n_quality = 0;  // FA + GA
  std::size_t n_fa = 0;
  std::size_t n_ga = 0;
};

// Counts over one project's deduplicated records. Throws DataError when empty.
QualityCounts count_quality(const std::vector<AssessmentRecord>& project_records);

struct QualityScore {
  std::size_t n_articles = 0;
  std::size_t n_quality = 0;
  double p = 0.5;
  double score = 0.0;                // n_quality / n_articles^p
  std::optional<double> log_score;   // natural log, when n_quality >= 1
};

// Throws DataError for n_articles == 0, n_quality > n_articles or p outside [0, 1].
QualityScore q_score(std::size_t n_quality, std::size_t n_articles, double p = 0.5);

// project,article,grade with a header row.
std::vector<AssessmentRecord> read_assessments_csv(std::istream& in);
void write_assessments_csv(std::ostream& out, const std::vector<AssessmentRecord>& records);

struct ProjectQuality {
  std::string project;
  QualityCounts counts;
  QualityScore score;
};

// Deduplicates, groups by project and scores each one.
std::vector<ProjectQuality> score_projects(const std::vector<AssessmentRecord>& records, double p = 0.5);

// project,n_articles,n_quality,q_score
void write_quality_csv(std::ostream& out, const std::vector<ProjectQuality>& rows);
// project,n_fa,n_ga
void write_grade_counts_csv(std::ostream& out, const std::vector<ProjectQuality>& rows);

}  // namespace commnet::quality
