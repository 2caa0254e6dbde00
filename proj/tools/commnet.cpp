// commnet: WikiProject communication networks and article quality.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "commnet/errors.hpp"
#include "commnet/pipeline/config.hpp"
#include "commnet/pipeline/pipeline.hpp"
#include "commnet/pipeline/transport.hpp"

namespace fs = std::filesystem;
using namespace commnet;
using namespace commnet::pipeline;

namespace {

int print_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("no report at '" + path.string() + "'; run the regress stage first");
  std::cout << in.rdbuf();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build WikiProject communication networks and relate their structure to article quality."};
  app.require_subcommand(1);

  std::string config_path;
  std::string cache_dir;
  std::string work_dir = "work";
  bool offline = false;
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--cache", cache_dir, "response cache directory (overrides the config)");
  app.add_option("--work", work_dir, "work directory holding stage outputs")->capture_default_str();
  app.add_flag("--offline", offline, "serve requests from the cache only; a miss is an error");

  auto* ingest = app.add_subcommand("ingest", "download project pages, user talk pages and assessments");
  auto* parse = app.add_subcommand("parse", "extract members and posts from raw pages");
  auto* build = app.add_subcommand("build", "build one communication network per project");
  auto* quality = app.add_subcommand("quality", "count FA/GA articles and compute quality scores");
  auto* metrics = app.add_subcommand("metrics", "compute network metrics and the per-project variable table");
  auto* regress = app.add_subcommand("regress", "fit the quality models and write the report");
  auto* run = app.add_subcommand("run", "all stages; ingest is skipped when raw data is complete");
  auto* report = app.add_subcommand("report", "print the regression report");

  std::string data_csv;
  std::string out_dir;
  regress->add_option("--data", data_csv, "fit an external data matrix CSV instead of metrics/data_matrix.csv")
      ->check(CLI::ExistingFile);
  regress->add_option("--out", out_dir, "output directory for --data (default: <work>/regression)");
  bool as_json = false;
  report->add_flag("--json", as_json, "print report.json instead of the text tables");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    PipelineConfig config;
    if (!config_path.empty()) {
      config = load_config(config_path);
    } else {
      apply_environment(config);
      config.validate();
    }
    if (!cache_dir.empty()) config.cache_directory = cache_dir;
    if (offline) config.offline = true;
    const Workspace ws{work_dir};

    std::unique_ptr<Transport> transport;
    if (config.offline) {
      transport = std::make_unique<OfflineTransport>();
    } else {
      transport = make_http_transport(config.user_agent);
    }

    if (*ingest) {
      const auto s = run_ingest(config, *transport, ws);
      std::cerr << "commnet: ingest done (" << s.network_calls << " requests, " << s.cache_hits << " cache hits)\n";
    } else if (*parse) {
      run_parse(config, ws);
    } else if (*build) {
      run_build(config, ws);
    } else if (*quality) {
      run_quality(config, ws);
    } else if (*metrics) {
      run_metrics(config, ws);
    } else if (*regress) {
      if (data_csv.empty()) {
        run_regress(config, ws);
      } else {
        run_regress_on(config, data_csv, out_dir.empty() ? ws.regression() : fs::path(out_dir));
      }
    } else if (*run) {
      const auto s = run_pipeline(config, *transport, ws);
      std::cerr << "commnet: run done (" << s.network_calls << " requests, " << s.cache_hits << " cache hits)\n";
    } else if (*report) {
      return print_file(ws.regression() / (as_json ? "report.json" : "report.txt"));
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "commnet: configuration error: " << e.what() << "\n";
    return 2;
  } catch (const NetworkError& e) {
    std::cerr << "commnet: network error: " << e.what() << "\n";
    return 3;
  } catch (const DataError& e) {
    std::cerr << "commnet: data error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "commnet: " << e.what() << "\n";
    return 1;
  }
}
