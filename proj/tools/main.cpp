// sentivec command line: `run` executes a benchmark grid from a config file,
// `plotdata` flattens result CSVs into plot-ready rows.
//
// Exit codes: 0 success, 1 config error, 2 data error, 3 runtime failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sentivec/config.hpp"
#include "sentivec/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitRuntime = 3;

struct RunOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  std::vector<std::string> datasets;
  std::vector<std::string> vectorizers;
  std::vector<std::string> classifiers;
  std::optional<std::size_t> jobs;
  bool timings = false;
};

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sentivec::DataError("cannot write output file: " + path.string());
  out << content;
}

int cmd_run(const RunOptions& opts) {
  sentivec::RunConfig config = sentivec::parse_config(opts.config_path);
  if (opts.seed) config.master_seed = *opts.seed;
  if (!opts.out.empty()) config.out = opts.out;
  if (opts.format == "csv") config.format = sentivec::RunConfig::Format::Csv;
  if (opts.format == "json") config.format = sentivec::RunConfig::Format::Json;
  if (opts.jobs) config.jobs = std::max<std::size_t>(1, *opts.jobs);

  auto grid = sentivec::build_grid(config, opts.datasets, opts.vectorizers,
                                   opts.classifiers);
  if (grid.empty())
    throw sentivec::ConfigError(opts.config_path +
                                ": no grid cells selected (check --dataset/"
                                "--vectorizer/--classifier filters)");

  std::map<std::string, const sentivec::DatasetSpec*> specs;
  for (const auto& d : config.datasets) specs[d.name] = &d;
  sentivec::CorpusProvider corpora([&specs](const std::string& name) {
    auto it = specs.find(name);
    if (it == specs.end()) throw sentivec::DataError("unknown dataset: " + name);
    sentivec::LoadWarnings warnings;
    sentivec::Corpus corpus = it->second->load(&warnings);
    for (const auto& msg : warnings.messages)
      std::cerr << "warning: " << msg << "\n";
    return corpus;
  });

  auto reports =
      sentivec::run_grid(grid, corpora, config.master_seed, config.jobs);

  std::string out_path = config.output_path();
  if (config.format == sentivec::RunConfig::Format::Csv)
    write_file(out_path, sentivec::reports_to_csv(reports, opts.timings));
  else
    write_file(out_path, sentivec::reports_to_json(reports).dump(2) + "\n");

  std::cout << sentivec::format_accuracy_table(reports);
  std::cout << "\nwrote " << out_path << " (" << reports.size() << " cells, seed "
            << config.master_seed << ")\n";

  bool any_failed = false;
  bool any_data_error = false;
  for (const auto& r : reports) {
    if (r.ok) continue;
    any_failed = true;
    std::cerr << "cell " << r.dataset << "/" << r.vectorizer_id << "/"
              << r.classifier_id << " failed: " << r.error << "\n";
    if (r.error.find("cannot open") != std::string::npos ||
        r.error.find("no such") != std::string::npos ||
        r.error.find("not a directory") != std::string::npos ||
        r.error.find("unknown dataset") != std::string::npos)
      any_data_error = true;
  }
  if (any_failed) return any_data_error ? kExitData : kExitRuntime;
  return kExitOk;
}

int cmd_plotdata(const std::vector<std::string>& inputs, const std::string& out) {
  std::vector<std::filesystem::path> files(inputs.begin(), inputs.end());
  std::vector<std::string> warnings;
  auto rows = sentivec::collect_plot_rows(files, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  write_file(out, sentivec::plot_rows_to_csv(rows));
  std::cout << "wrote " << out << " (" << rows.size() << " rows)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TF-IDF / Doc2Vec sentiment classification benchmark harness"};
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "Run the experiment grid from a config");
  run->add_option("--config", run_opts.config_path, "Config file")->required();
  std::uint64_t seed_value = 0;
  auto* seed_opt = run->add_option("--seed", seed_value, "Master seed override");
  run->add_option("--out", run_opts.out, "Output file path");
  run->add_option("--format", run_opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--dataset", run_opts.datasets, "Only run these datasets");
  run->add_option("--vectorizer", run_opts.vectorizers,
                  "Only run these vectorizers");
  run->add_option("--classifier", run_opts.classifiers,
                  "Only run these classifiers");
  std::size_t jobs_value = 1;
  auto* jobs_opt = run->add_option("--jobs", jobs_value, "Parallel grid cells");
  run->add_flag("--timings", run_opts.timings,
                "Fill the CSV timing columns (breaks byte-for-byte "
                "reproducibility of the output)");

  std::vector<std::string> plot_inputs;
  std::string plot_out = "plotdata.csv";
  auto* plotdata =
      app.add_subcommand("plotdata", "Flatten result CSVs into plot-ready rows");
  plotdata->add_option("files", plot_inputs, "Result CSV files")
      ->required()
      ->expected(-1);
  plotdata->add_option("--out", plot_out, "Output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run->parsed()) {
      if (*seed_opt) run_opts.seed = seed_value;
      if (*jobs_opt) run_opts.jobs = jobs_value;
      return cmd_run(run_opts);
    }
    return cmd_plotdata(plot_inputs, plot_out);
  } catch (const sentivec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const sentivec::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
