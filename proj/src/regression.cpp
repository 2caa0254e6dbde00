#include "commnet/regression.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "commnet/csv.hpp"
#include "commnet/errors.hpp"

namespace commnet::stats {

using nlohmann::ordered_json;

bool DataMatrix::has(const std::string& name) const {
  return std::find(names.begin(), names.end(), name) != names.end();
}

const std::vector<double>& DataMatrix::column(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw DataError("data matrix has no column '" + name + "'");
  return columns[static_cast<std::size_t>(it - names.begin())];
}

void DataMatrix::add_column(std::string name, std::vector<double> values) {
  if (values.size() != rows()) throw DataError("column '" + name + "' length does not match row count");
  if (has(name)) throw DataError("duplicate column '" + name + "'");
  names.push_back(std::move(name));
  columns.push_back(std::move(values));
}

DataMatrix read_data_matrix_csv(std::istream& in) {
  csv::Reader reader(in);
  std::vector<std::string> row;
  DataMatrix data;
  if (!reader.next(row) || row.empty() || row[0] != "project")
    throw DataError("data matrix csv: header must start with 'project'");
  data.names.assign(row.begin() + 1, row.end());
  data.columns.resize(data.names.size());
  while (reader.next(row)) {
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != data.names.size() + 1)
      throw DataError("data matrix csv line " + std::to_string(reader.line()) + ": wrong field count");
    data.row_labels.push_back(row[0]);
    for (std::size_t j = 0; j < data.names.size(); ++j) {
      const std::string& cell = row[j + 1];
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(v))
        throw DataError("data matrix csv line " + std::to_string(reader.line()) + ": column '" + data.names[j] +
                        "' has non-numeric or missing value '" + cell + "'");
      data.columns[j].push_back(v);
    }
  }
  return data;
}

void write_data_matrix_csv(std::ostream& out, const DataMatrix& data) {
  std::vector<std::string> header{"project"};
  header.insert(header.end(), data.names.begin(), data.names.end());
  csv::write_row(out, header);
  for (std::size_t i = 0; i < data.rows(); ++i) {
    std::vector<std::string> fields{data.row_labels[i]};
    for (const auto& col : data.columns) fields.push_back(csv::exact(col[i]));
    csv::write_row(out, fields);
  }
}

std::vector<ModelSpec> quality_models() {
  return {
      {"Model 1", {"fraction", "det_norm", "deg_norm", "strength_log", "members_log"}},
      {"Model 2", {"det_norm", "deg_norm", "strength_log", "members_log"}},
      {"Model 3", {"strength_log", "members_log", "ei_norm"}},
  };
}

OlsFit fit_model(const DataMatrix& data, const ModelSpec& spec, const std::string& response) {
  std::vector<std::vector<double>> cols;
  for (const auto& name : spec.predictors) cols.push_back(data.column(name));
  return ols_fit(spec.predictors, cols, data.column(response));
}

namespace {

struct Label {
  const char* column;
  const char* text;
};

constexpr Label kDescriptiveRows[] = {
    {"quality", "Quality"},
    {"fraction", "Fraction in communication network"},
    {"det_norm", "Determinism"},
    {"deg_norm", "Degeneracy"},
    {"strength", "Average connection strength"},
    {"members", "Number of project members"},
};

constexpr Label kPredictorRows[] = {
    {"fraction", "Fraction in communication network"},
    {"det_norm", "Determinism"},
    {"deg_norm", "Degeneracy"},
    {"strength_log", "Average connection strength (log)"},
    {"members_log", "Number of project members (log)"},
    {"ei_norm", "Effective information"},
    {kIntercept, "Constant"},
};

const OlsFit* fit_named(const RegressionReport& report, const std::string& name) {
  for (const auto& m : report.models)
    if (m.spec.name == name && m.fit) return &*m.fit;
  return nullptr;
}

template <typename Fn>
TestResult run_test(std::string label, Fn&& fn) {
  TestResult t;
  t.label = std::move(label);
  try {
    t.result = fn();
  } catch (const DataError& e) {
    t.error = e.what();
  }
  return t;
}

std::string num(double v, int decimals = 3) {
  if (!std::isfinite(v)) return "n/a";
  return csv::fixed(v, decimals);
}

std::string p_text(double p) {
  if (!std::isfinite(p)) return "p = n/a";
  if (p < 0.001) return "p < .001";
  return "p = " + csv::fixed(p, 3);
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::string rstrip(std::string s) {
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

ordered_json number_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

}  // namespace

RegressionReport build_report(const DataMatrix& data) {
  RegressionReport report;
  report.n = data.rows();

  for (const auto& row : kDescriptiveRows) {
    DescriptiveRow d{row.text, std::nullopt};
    if (data.has(row.column) && data.rows() > 0) d.values = descriptives(data.column(row.column));
    report.descriptives.push_back(std::move(d));
  }

  if (data.has("n_fa") && data.has("n_ga")) {
    try {
      report.fa_ga_correlation = pearson_r(data.column("n_fa"), data.column("n_ga"));
    } catch (const DataError& e) {
      report.fa_ga_error = e.what();
    }
  } else {
    report.fa_ga_error = "FA/GA count columns absent";
  }

  for (const auto& spec : quality_models()) {
    ModelResult m{spec, std::nullopt, {}};
    try {
      auto fit = fit_model(data, spec);
      if (fit.df2 == 0) throw DataError("no residual degrees of freedom (n = " + std::to_string(fit.n) + ")");
      m.fit = std::move(fit);
    } catch (const DataError& e) {
      m.error = e.what();
    }
    report.models.push_back(std::move(m));
  }

  const OlsFit* m1 = fit_named(report, "Model 1");
  const OlsFit* m2 = fit_named(report, "Model 2");
  const OlsFit* m3 = fit_named(report, "Model 3");
  const auto need = [](const OlsFit* fit, const char* name) {
    if (!fit) throw DataError(std::string(name) + " not estimated");
    return fit;
  };
  report.tests.push_back(run_test("Model 2 vs Model 1 (nested F test)", [&] {
    return nested_f_test(*need(m1, "Model 1"), *need(m2, "Model 2"));
  }));
  report.tests.push_back(run_test("H0: b_det + b_deg = 0 in Model 2", [&] {
    const OlsFit& fit = *need(m2, "Model 2");
    std::vector<double> c(fit.coefficients.size(), 0.0);
    c[fit.index_of("det_norm")] = 1.0;
    c[fit.index_of("deg_norm")] = 1.0;
    return linear_hypothesis(fit, c, 0.0);
  }));
  report.tests.push_back(run_test("Model 3 vs Model 2 (restricted-model F test)", [&] {
    const OlsFit& full = *need(m2, "Model 2");
    const OlsFit& restricted = *need(m3, "Model 3");
    FTestResult r;
    r.df1 = static_cast<double>(restricted.df2) - static_cast<double>(full.df2);
    r.df2 = static_cast<double>(full.df2);
    if (r.df1 <= 0.0) throw DataError("Model 3 is not a restriction of Model 2");
    r.f_value = (std::max(restricted.rss - full.rss, 0.0) / r.df1) / (full.rss / r.df2);
    r.p_value = f_sf(r.f_value, r.df1, r.df2);
    return r;
  }));
  return report;
}

std::string report_json(const RegressionReport& report, const std::string& metadata_json) {
  ordered_json j;
  j["metadata"] = ordered_json::parse(metadata_json);
  j["n"] = report.n;

  ordered_json desc = ordered_json::array();
  for (const auto& d : report.descriptives) {
    ordered_json row;
    row["variable"] = d.label;
    if (d.values) {
      row["mean"] = number_or_null(d.values->mean);
      row["sd"] = d.values->sd ? number_or_null(*d.values->sd) : ordered_json(nullptr);
      row["median"] = number_or_null(d.values->median);
    } else {
      row["mean"] = row["sd"] = row["median"] = nullptr;
    }
    desc.push_back(row);
  }
  j["descriptives"] = desc;

  ordered_json corr;
  if (report.fa_ga_correlation) {
    corr["r"] = number_or_null(report.fa_ga_correlation->r);
    corr["p_value"] = number_or_null(report.fa_ga_correlation->p_value);
    corr["n"] = report.fa_ga_correlation->n;
  } else {
    corr["error"] = report.fa_ga_error;
  }
  j["fa_ga_correlation"] = corr;

  ordered_json models = ordered_json::array();
  for (const auto& m : report.models) {
    ordered_json mj;
    mj["name"] = m.spec.name;
    mj["predictors"] = m.spec.predictors;
    if (m.fit) {
      const OlsFit& f = *m.fit;
      ordered_json coefs = ordered_json::array();
      for (std::size_t a = 0; a < f.names.size(); ++a) {
        ordered_json c;
        c["name"] = f.names[a];
        c["estimate"] = number_or_null(f.coefficients[a]);
        c["std_error"] = number_or_null(f.std_errors[a]);
        c["t"] = number_or_null(f.t_values[a]);
        c["p_value"] = number_or_null(f.p_values[a]);
        c["stars"] = significance_stars(f.p_values[a]);
        coefs.push_back(c);
      }
      mj["coefficients"] = coefs;
      mj["r_squared"] = number_or_null(f.r_squared);
      mj["f_statistic"] = number_or_null(f.f_statistic);
      mj["df1"] = f.df1;
      mj["df2"] = f.df2;
      mj["f_p_value"] = number_or_null(f.f_p_value);
      mj["rss"] = number_or_null(f.rss);
      mj["n"] = f.n;
    } else {
      mj["error"] = m.error;
    }
    models.push_back(mj);
  }
  j["models"] = models;

  ordered_json tests = ordered_json::array();
  for (const auto& t : report.tests) {
    ordered_json tj;
    tj["label"] = t.label;
    if (t.result) {
      tj["f_value"] = number_or_null(t.result->f_value);
      tj["df1"] = t.result->df1;
      tj["df2"] = t.result->df2;
      tj["p_value"] = number_or_null(t.result->p_value);
    } else {
      tj["error"] = t.error;
    }
    tests.push_back(tj);
  }
  j["tests"] = tests;
  return j.dump(2) + "\n";
}

std::string report_text(const RegressionReport& report) {
  std::ostringstream out;
  constexpr std::size_t kLabel = 36;
  constexpr std::size_t kCell = 18;

  out << "Descriptive statistics of project measures (N = " << report.n << ")\n";
  out << rstrip(pad("Variable", kLabel) + pad("Mean (SD)", 22) + "Median") << "\n";
  out << std::string(kLabel + 22 + 8, '-') << "\n";
  for (const auto& d : report.descriptives) {
    std::string cell = "n/a";
    std::string median = "n/a";
    if (d.values) {
      cell = num(d.values->mean) + " (" + (d.values->sd ? num(*d.values->sd) : std::string("n/a")) + ")";
      median = num(d.values->median);
    }
    out << rstrip(pad(d.label, kLabel) + pad(cell, 22) + median) << "\n";
  }
  out << "\nFA/GA count correlation: ";
  if (report.fa_ga_correlation)
    out << "r = " << num(report.fa_ga_correlation->r) << ", " << p_text(report.fa_ga_correlation->p_value)
        << " (n = " << report.fa_ga_correlation->n << ")\n";
  else
    out << "n/a (" << report.fa_ga_error << ")\n";

  out << "\nEffects of network structure on quality (N = " << report.n << ")\n";
  std::string header = pad("Predictor", kLabel);
  for (const auto& m : report.models) header += pad(m.spec.name, kCell);
  out << rstrip(header) << "\n";
  out << std::string(kLabel + kCell * report.models.size(), '-') << "\n";
  for (const auto& row : kPredictorRows) {
    std::string line = pad(row.text, kLabel);
    for (const auto& m : report.models) {
      std::string cell;
      if (m.fit) {
        auto it = std::find(m.fit->names.begin(), m.fit->names.end(), row.column);
        if (it != m.fit->names.end()) {
          const auto a = static_cast<std::size_t>(it - m.fit->names.begin());
          cell = num(m.fit->coefficients[a]) + significance_stars(m.fit->p_values[a]) + " (" +
                 num(m.fit->std_errors[a]) + ")";
        }
      } else if (row.column == std::string(kIntercept) ||
                 std::find(m.spec.predictors.begin(), m.spec.predictors.end(), row.column) != m.spec.predictors.end()) {
        cell = "n/a";
      }
      line += pad(cell, kCell);
    }
    out << rstrip(line) << "\n";
  }
  out << std::string(kLabel + kCell * report.models.size(), '-') << "\n";
  std::string r2 = pad("R^2", kLabel);
  std::string fline = pad("F", kLabel);
  for (const auto& m : report.models) {
    r2 += pad(m.fit ? num(m.fit->r_squared) : "n/a", kCell);
    fline += pad(m.fit ? "F(" + std::to_string(m.fit->df1) + ", " + std::to_string(m.fit->df2) +
                             ") = " + num(m.fit->f_statistic, 2)
                       : "n/a",
                 kCell);
  }
  out << rstrip(r2) << "\n" << rstrip(fline) << "\n";
  out << "Note: linear regression coefficients; standard errors in parentheses; ***: p <= .001, *: p <= .05\n";
  for (const auto& m : report.models)
    if (!m.fit) out << m.spec.name << " not estimated: " << m.error << "\n";

  out << "\nModel comparisons\n";
  for (const auto& t : report.tests) {
    out << t.label << ": ";
    if (t.result)
      out << "F(" << num(t.result->df1, 0) << ", " << num(t.result->df2, 0) << ") = " << num(t.result->f_value) << ", "
          << p_text(t.result->p_value) << "\n";
    else
      out << "n/a (" << t.error << ")\n";
  }
  return out.str();
}

}  // namespace commnet::stats
