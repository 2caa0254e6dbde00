#include "commnet/pipeline/pipeline.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>
#include <unistd.h>

#include "commnet/csv.hpp"
#include "commnet/errors.hpp"
#include "commnet/graph_io.hpp"
#include "commnet/network.hpp"
#include "commnet/pipeline/api_client.hpp"
#include "commnet/pipeline/cache.hpp"
#include "commnet/pipeline/fetch.hpp"
#include "commnet/quality.hpp"
#include "commnet/regression.hpp"
#include "commnet/wikitext_io.hpp"

namespace commnet::pipeline {

namespace fs = std::filesystem;

namespace {

constexpr const char* kProjects = "projects.txt";
constexpr const char* kProjectPages = "project_pages.jsonl";
constexpr const char* kTalkPages = "user_talk_pages.jsonl";
constexpr const char* kAssessments = "assessments.csv";

template <class F>
auto in_stage(const char* stage, F&& body) {
  const std::string prefix = std::string("stage ") + stage + ": ";
  try {
    return body();
  } catch (const ConfigError& e) {
    throw ConfigError(prefix + e.what());
  } catch (const NetworkError& e) {
    throw NetworkError(prefix + e.what());
  } catch (const DataError& e) {
    throw DataError(prefix + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw DataError(prefix + e.what());
  } catch (const fs::filesystem_error& e) {
    throw DataError(prefix + e.what());
  }
}

// Replaces `path` in one step so a failed stage never leaves half a file.
void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  static std::atomic<unsigned> counter{0};
  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary);
    out << content;
    if (!out) throw DataError("cannot write '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("missing input '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class Writer>
std::string render(Writer&& w) {
  std::ostringstream out;
  w(out);
  return out.str();
}

wikitext::ParseOptions parse_options(const PipelineConfig& config) {
  wikitext::ParseOptions o;
  o.delivery_agents = config.delivery_agents;
  o.mass_message_markers = config.mass_message_markers;
  return o;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) lines.push_back(line);
  return lines;
}

std::vector<wikitext::PageText> read_pages(const fs::path& path) {
  std::istringstream in(read_file(path));
  return wikitext::read_pages_jsonl(in);
}

std::map<std::string, std::set<std::string>> read_members(const fs::path& path) {
  std::istringstream in(read_file(path));
  csv::Reader reader(in);
  std::vector<std::string> row;
  if (!reader.next(row) || row != std::vector<std::string>{"project", "user"})
    throw DataError("'" + path.string() + "': expected header project,user");
  std::map<std::string, std::set<std::string>> members;
  while (reader.next(row)) {
    if (row.size() != 2) throw DataError("'" + path.string() + "' line " + std::to_string(reader.line()) + ": expected 2 fields");
    members[row[0]].insert(row[1]);
  }
  return members;
}

// Rows keyed by the first column; the header must match `columns`.
std::map<std::string, std::vector<std::string>> read_keyed_csv(const fs::path& path,
                                                               const std::vector<std::string>& columns) {
  std::istringstream in(read_file(path));
  csv::Reader reader(in);
  std::vector<std::string> row;
  if (!reader.next(row) || row != columns) throw DataError("'" + path.string() + "': unexpected header");
  std::map<std::string, std::vector<std::string>> rows;
  while (reader.next(row)) {
    if (row.size() != columns.size())
      throw DataError("'" + path.string() + "' line " + std::to_string(reader.line()) + ": wrong field count");
    rows[row[0]] = row;
  }
  return rows;
}

std::size_t parse_count(const std::string& text, const fs::path& path) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size()) throw DataError("'" + path.string() + "': bad count '" + text + "'");
  return static_cast<std::size_t>(v);
}

std::string slug_file(const std::string& project) { return project_slug(project) + ".tsv"; }

}  // namespace

bool Workspace::raw_complete() const {
  for (const char* f : {kProjects, kProjectPages, kTalkPages, kAssessments})
    if (!fs::exists(raw() / f)) return false;
  return true;
}

IngestStats run_ingest(const PipelineConfig& config, Transport& transport, const Workspace& ws) {
  return in_stage("ingest", [&] {
    ResponseCache cache(config.cache_directory);
    ApiClient client(config, transport, cache);

    std::set<std::string> projects;
    if (config.projects.empty()) {
      for (auto& p : discover_projects(client, config)) projects.insert(std::move(p));
    } else {
      for (const auto& p : config.projects) projects.insert(normalize_project_name(p, config.project_aliases));
    }

    const auto options = parse_options(config);
    std::map<std::string, wikitext::PageText> project_pages;
    std::set<std::string> usernames;
    for (const auto& project : projects) {
      std::vector<std::pair<std::string, std::string>> pairs;
      for (auto& page : fetch_project_pages(client, config, project)) {
        pairs.emplace_back(page.title, page.wikitext);
        project_pages[page.title] = std::move(page);
      }
      for (const auto& m : wikitext::extract_project_members(pairs, options)) usernames.insert(m);
    }
    const auto talk_pages = fetch_user_talk_pages(client, config, {usernames.begin(), usernames.end()});
    const std::vector<std::string> project_list(projects.begin(), projects.end());
    const auto assessments = fetch_assessments(client, config, project_list);

    std::vector<wikitext::PageText> pages;
    for (auto& [_, page] : project_pages) pages.push_back(page);
    std::string project_text;
    for (const auto& p : projects) project_text += p + "\n";

    write_file(ws.raw() / kProjectPages, render([&](std::ostream& o) { wikitext::write_pages_jsonl(o, pages); }));
    write_file(ws.raw() / kTalkPages, render([&](std::ostream& o) { wikitext::write_pages_jsonl(o, talk_pages); }));
    write_file(ws.raw() / kAssessments,
               render([&](std::ostream& o) { quality::write_assessments_csv(o, assessments); }));
    write_file(ws.raw() / kProjects, project_text);
    return IngestStats{client.network_calls(), client.cache_hits()};
  });
}

void run_parse(const PipelineConfig& config, const Workspace& ws) {
  in_stage("parse", [&] {
    const auto options = parse_options(config);
    const auto projects = read_lines(ws.raw() / kProjects);
    const std::set<std::string> wanted(projects.begin(), projects.end());

    std::map<std::string, std::vector<std::pair<std::string, std::string>>> by_project;
    for (const auto& page : read_pages(ws.raw() / kProjectPages)) {
      if (wikitext::is_talk_title(page.title)) continue;
      const auto project = project_of_page_title(page.title, config.project_aliases);
      if (project && wanted.count(*project)) by_project[*project].emplace_back(page.title, page.wikitext);
    }

    std::ostringstream members_csv;
    csv::write_row(members_csv, {"project", "user"});
    for (const auto& project : projects) {
      auto it = by_project.find(project);
      const auto members =
          it == by_project.end() ? std::set<std::string>{} : wikitext::extract_project_members(it->second, options);
      if (members.empty()) std::cerr << "commnet: project '" << project << "' has no identifiable members; skipped\n";
      for (const auto& m : members) csv::write_row(members_csv, {project, m});
    }

    std::vector<wikitext::PostRecord> posts;
    for (const auto& page : read_pages(ws.raw() / kTalkPages)) {
      const auto talk = wikitext::TalkPage::from(page.title, page.wikitext);
      for (auto& p : wikitext::post_records(talk, options)) posts.push_back(std::move(p));
    }

    write_file(ws.parsed() / "posts.jsonl", render([&](std::ostream& o) { wikitext::write_posts_jsonl(o, posts); }));
    write_file(ws.parsed() / "members.csv", members_csv.str());
  });
}

void run_build(const PipelineConfig& config, const Workspace& ws) {
  in_stage("build", [&] {
    const auto members = read_members(ws.parsed() / "members.csv");
    std::istringstream posts_in(read_file(ws.parsed() / "posts.jsonl"));
    const auto posts = wikitext::read_posts_jsonl(posts_in);
    const network::PostIndex index(posts);
    const network::BuildOptions options{config.members_only};

    std::vector<network::ProjectRecord> records;
    std::set<std::string> slugs;
    for (const auto& [project, set] : members) {
      if (!slugs.insert(slug_file(project)).second)
        throw DataError("projects collide on file name '" + slug_file(project) + "'");
      records.push_back(network::project_record(project, set, index.build(set, options)));
    }

    if (fs::exists(ws.networks())) {
      for (const auto& entry : fs::directory_iterator(ws.networks()))
        if (entry.path().extension() == ".tsv") fs::remove(entry.path());
    }
    for (const auto& r : records)
      write_file(ws.networks() / slug_file(r.project), graph::to_edge_list(network::network_with_members(r)));
    write_file(ws.networks() / "summary.csv",
               render([&](std::ostream& o) { network::write_summary_csv(o, records); }));
  });
}

void run_quality(const PipelineConfig& config, const Workspace& ws) {
  in_stage("quality", [&] {
    std::istringstream in(read_file(ws.raw() / kAssessments));
    auto records = quality::read_assessments_csv(in);
    for (auto& r : records) r.project = normalize_project_name(r.project, config.project_aliases);
    const auto scored = quality::score_projects(records, config.p);
    write_file(ws.quality() / "quality.csv", render([&](std::ostream& o) { quality::write_quality_csv(o, scored); }));
    write_file(ws.quality() / "grade_counts.csv",
               render([&](std::ostream& o) { quality::write_grade_counts_csv(o, scored); }));
  });
}

void run_metrics(const PipelineConfig& config, const Workspace& ws) {
  in_stage("metrics", [&] {
    const auto members = read_members(ws.parsed() / "members.csv");
    const auto quality_rows =
        read_keyed_csv(ws.quality() / "quality.csv", {"project", "n_articles", "n_quality", "q_score"});
    const auto grade_rows = read_keyed_csv(ws.quality() / "grade_counts.csv", {"project", "n_fa", "n_ga"});

    std::vector<network::ProjectRecord> records;
    std::map<std::string, std::size_t> n_quality;
    for (const auto& [project, set] : members) {
      std::istringstream in(read_file(ws.networks() / slug_file(project)));
      records.push_back(network::project_record(project, set, graph::read_edge_list(in)));
      auto q = quality_rows.find(project);
      n_quality[project] = q == quality_rows.end() ? 0 : parse_count(q->second[2], ws.quality() / "quality.csv");
    }
    std::set<std::string> included;
    for (const auto& r : network::filter_projects(records, n_quality, config.min_active_nodes))
      included.insert(r.project);

    std::ostringstream vars;
    csv::write_row(vars, {"project", "member_count", "active_nodes", "fraction_in_network", "average_strength",
                          "determinism_bits", "degeneracy_bits", "effective_information_bits", "determinism",
                          "degeneracy", "effective_information", "n_articles", "n_quality", "n_fa", "n_ga",
                          "quality", "included"});
    const std::vector<std::string> names{"quality",     "quality_log", "fraction",     "det_norm",
                                         "deg_norm",    "ei_norm",     "strength",     "strength_log",
                                         "members",     "members_log", "n_fa",         "n_ga"};
    stats::DataMatrix matrix;
    std::vector<std::vector<double>> columns(names.size());

    for (const auto& r : records) {
      std::vector<std::string> row{r.project, std::to_string(r.member_count), std::to_string(r.active_nodes),
                                   csv::fixed(r.fraction_in_network)};
      std::optional<graph::StructureMetrics> m;
      std::optional<double> strength;
      if (r.network.active_count() >= 2) {
        m = graph::effective_information(r.network);
        strength = graph::average_strength(r.network);
      }
      row.push_back(strength ? csv::fixed(*strength) : "");
      for (double v : {m ? m->determinism_bits : 0.0, m ? m->degeneracy_bits : 0.0,
                       m ? m->effective_information_bits : 0.0, m ? m->determinism_norm : 0.0,
                       m ? m->degeneracy_norm : 0.0, m ? m->effective_information_norm : 0.0})
        row.push_back(m ? csv::fixed(v) : "");

      const auto q = quality_rows.find(r.project);
      const auto g = grade_rows.find(r.project);
      std::size_t n_articles = 0, nq = 0, n_fa = 0, n_ga = 0;
      if (q != quality_rows.end()) {
        n_articles = parse_count(q->second[1], ws.quality() / "quality.csv");
        nq = parse_count(q->second[2], ws.quality() / "quality.csv");
      }
      if (g != grade_rows.end()) {
        n_fa = parse_count(g->second[1], ws.quality() / "grade_counts.csv");
        n_ga = parse_count(g->second[2], ws.quality() / "grade_counts.csv");
      }
      std::optional<quality::QualityScore> score;
      if (n_articles > 0) score = quality::q_score(nq, n_articles, config.p);
      const bool in = included.count(r.project) > 0;
      for (std::size_t v : {n_articles, nq, n_fa, n_ga})
        row.push_back(q == quality_rows.end() ? "" : std::to_string(v));
      row.push_back(score ? csv::fixed(score->score) : "");
      row.push_back(in ? "1" : "0");
      csv::write_row(vars, row);

      if (!in) continue;
      const double members_n = static_cast<double>(r.member_count);
      const std::vector<double> values{score->score,
                                       *score->log_score,
                                       r.fraction_in_network,
                                       m->determinism_norm,
                                       m->degeneracy_norm,
                                       m->effective_information_norm,
                                       *strength,
                                       std::log(*strength),
                                       members_n,
                                       std::log(members_n),
                                       static_cast<double>(n_fa),
                                       static_cast<double>(n_ga)};
      matrix.row_labels.push_back(r.project);
      for (std::size_t i = 0; i < values.size(); ++i) columns[i].push_back(values[i]);
    }
    for (std::size_t i = 0; i < names.size(); ++i) matrix.add_column(names[i], std::move(columns[i]));

    write_file(ws.metrics() / "variables.csv", vars.str());
    write_file(ws.metrics() / "data_matrix.csv",
               render([&](std::ostream& o) { stats::write_data_matrix_csv(o, matrix); }));
  });
}

std::string metadata_json(const PipelineConfig& config) {
  nlohmann::ordered_json j;
  j["snapshot_date"] = config.snapshot_date;
  j["api_base_url"] = config.api_base_url;
  j["projects"] = config.projects;
  j["p"] = config.p;
  j["min_active_nodes"] = config.min_active_nodes;
  j["members_only"] = config.members_only;
  j["assessment_mode"] = config.api.assessment_mode;
  j["metric_units"] = "determinism, degeneracy and effective information divided by log2(active nodes)";
  j["log_base"] = "natural logarithm for quality_log, strength_log and members_log";
  j["limitations"] = {
      "renamed accounts are distinct nodes; no rename resolution",
      "members are editors who signed a project page; unsigned contributions are not detected",
      "signatures without a link to a User or User talk page are not recognized"};
  j["note"] =
      "Values depend on the wiki snapshot that was crawled; runs against a live wiki on a different date "
      "will not match results computed from other snapshots.";
  return j.dump(2);
}

void run_regress_on(const PipelineConfig& config, const fs::path& data_csv, const fs::path& out_dir) {
  in_stage("regress", [&] {
    std::istringstream in(read_file(data_csv));
    const auto data = stats::read_data_matrix_csv(in);
    const auto report = stats::build_report(data);
    const std::string meta = metadata_json(config);
    write_file(out_dir / "report.json", stats::report_json(report, meta) + "\n");
    write_file(out_dir / "report.txt", stats::report_text(report));
  });
}

void run_regress(const PipelineConfig& config, const Workspace& ws) {
  run_regress_on(config, ws.metrics() / "data_matrix.csv", ws.regression());
  in_stage("regress", [&] { write_file(ws.root / "metadata.json", metadata_json(config) + "\n"); });
}

IngestStats run_pipeline(const PipelineConfig& config, Transport& transport, const Workspace& ws) {
  IngestStats stats;
  if (ws.raw_complete()) {
    std::cerr << "commnet: " << ws.raw().string() << " is complete; skipping ingest\n";
  } else {
    stats = run_ingest(config, transport, ws);
  }
  run_parse(config, ws);
  run_build(config, ws);
  run_quality(config, ws);
  run_metrics(config, ws);
  run_regress(config, ws);
  return stats;
}

}  // namespace commnet::pipeline
