#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "commnet/stats.hpp"

namespace commnet::stats {

// Named numeric columns, one row per project.
struct DataMatrix {
  std::vector<std::string> row_labels;
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return row_labels.size(); }
  bool has(const std::string& name) const;
  const std::vector<double>& column(const std::string& name) const;  // throws DataError
  void add_column(std::string name, std::vector<double> values);
};

// Header "project,<name>,..."; numeric cells must parse as finite doubles.
DataMatrix read_data_matrix_csv(std::istream& in);
void write_data_matrix_csv(std::ostream& out, const DataMatrix& data);

struct ModelSpec {
  std::string name;
  std::vector<std::string> predictors;
};

// Response column of the quality models.
inline constexpr const char* kResponse = "quality_log";

// Model 1: fraction + det_norm + deg_norm + strength_log + members_log
// Model 2: Model 1 without fraction
// Model 3: strength_log + members_log + ei_norm
std::vector<ModelSpec> quality_models();

OlsFit fit_model(const DataMatrix& data, const ModelSpec& spec, const std::string& response = kResponse);

struct ModelResult {
  ModelSpec spec;
  std::optional<OlsFit> fit;
  std::string error;  // why the fit is missing
};

struct TestResult {
  std::string label;
  std::optional<FTestResult> result;
  std::string error;
};

struct DescriptiveRow {
  std::string label;
  std::optional<Descriptives> values;
};

struct RegressionReport {
  std::size_t n = 0;
  std::vector<DescriptiveRow> descriptives;
  std::optional<Correlation> fa_ga_correlation;
  std::string fa_ga_error;
  std::vector<ModelResult> models;
  std::vector<TestResult> tests;
};

// Fits the three models and the comparisons between them. Failures are
// recorded in the report instead of thrown, so small datasets still report.
RegressionReport build_report(const DataMatrix& data);

// JSON document; `metadata` is embedded verbatim under "metadata".
std::string report_json(const RegressionReport& report, const std::string& metadata_json = "{}");
// Aligned plain-text tables: descriptives, then coefficient (SE) with stars.
std::string report_text(const RegressionReport& report);

}  // namespace commnet::stats
