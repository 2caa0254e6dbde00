#pragma once

#include <filesystem>
#include <string>

#include "commnet/pipeline/config.hpp"
#include "commnet/pipeline/transport.hpp"

namespace commnet::pipeline {

// Files of a work directory, one subdirectory per stage:
//   raw/        projects.txt, project_pages.jsonl, user_talk_pages.jsonl, assessments.csv
//   parsed/     posts.jsonl, members.csv
//   networks/   <slug>.tsv per project, summary.csv
//   quality/    quality.csv, grade_counts.csv
//   metrics/    variables.csv, data_matrix.csv
//   regression/ report.json, report.txt
//   metadata.json
struct Workspace {
  std::filesystem::path root;

  std::filesystem::path raw() const { return root / "raw"; }
  std::filesystem::path parsed() const { return root / "parsed"; }
  std::filesystem::path networks() const { return root / "networks"; }
  std::filesystem::path quality() const { return root / "quality"; }
  std::filesystem::path metrics() const { return root / "metrics"; }
  std::filesystem::path regression() const { return root / "regression"; }
  bool raw_complete() const;
};

struct IngestStats {
  std::size_t network_calls = 0;
  std::size_t cache_hits = 0;
};

// Each stage reads only files written by earlier stages. Errors are rethrown
// with the stage name prefixed and keep their type (ConfigError,
// NetworkError, DataError).
IngestStats run_ingest(const PipelineConfig& config, Transport& transport, const Workspace& ws);
void run_parse(const PipelineConfig& config, const Workspace& ws);
void run_build(const PipelineConfig& config, const Workspace& ws);
void run_quality(const PipelineConfig& config, const Workspace& ws);
void run_metrics(const PipelineConfig& config, const Workspace& ws);
void run_regress(const PipelineConfig& config, const Workspace& ws);
// Report from an arbitrary data matrix CSV (same columns as metrics/data_matrix.csv).
void run_regress_on(const PipelineConfig& config, const std::filesystem::path& data_csv,
                    const std::filesystem::path& out_dir);

// Deterministic bundle metadata (no wall-clock values).
std::string metadata_json(const PipelineConfig& config);

// All stages. Ingest is skipped when raw/ already holds a complete download.
IngestStats run_pipeline(const PipelineConfig& config, Transport& transport, const Workspace& ws);

}  // namespace commnet::pipeline
