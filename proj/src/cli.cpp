#include "drbench/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "drbench/benchmark.hpp"
#include "drbench/dataset_io.hpp"
#include "drbench/evaluation.hpp"
#include "drbench/projection.hpp"
#include "drbench/report.hpp"
#include "drbench/synthetic.hpp"

namespace drbench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json read_json_file(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open " + file.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(file.string() + ": " + e.what());
  }
}

void write_json_file(const fs::path& file, const json& j) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw DataError("cannot write " + file.string());
  out << j.dump(2) << "\n";
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

// Flag combinations CLI11 cannot express; reported like parse errors.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct GenerateArgs {
  std::string name;
  std::uint64_t seed = 0;
  std::string out;
  std::optional<std::size_t> classes, per_class, dims, timesteps, algorithms, arrays, array_len;
};

int run_generate(const GenerateArgs& a) {
  json params = json::object();
  auto put = [&](const char* key, const std::optional<std::size_t>& v) {
    if (v) params[key] = *v;
  };
  put("T", a.timesteps);
  if (a.name == "sorts") {
    if (a.classes || a.per_class || a.dims) throw UsageError("sorts takes --algorithms, --arrays, --array-len");
    put("algorithms", a.algorithms);
    put("arrays_per_algorithm", a.arrays);
    put("array_len", a.array_len);
  } else {
    if (a.algorithms || a.arrays || a.array_len) throw UsageError(a.name + " takes --classes, --per-class, --dims");
    put("num_classes", a.classes);
    put("per_class", a.per_class);
    put("n", a.dims);
  }
  const DynamicDataset d = generate_by_name(a.name, a.seed, params);
  write_dataset(a.out, d);
  return kExitOk;
}

int run_validate(const std::string& dir) {
  const DynamicDataset d = read_dataset(dir);
  const auto report = validate_dataset(d);
  for (const auto& v : report) std::cerr << "violation: " << v.message << "\n";
  return report.empty() ? kExitOk : kExitData;
}

struct ProjectArgs {
  std::string technique, strategy = "G", data, out, config;
  std::optional<std::uint64_t> seed;
};

int run_project(const ProjectArgs& a) {
  json spec_json = {{"name", a.technique}, {"strategy", a.strategy}};
  if (!a.config.empty()) {
    const json cfg = read_json_file(a.config);
    // Either a bare params object or a full technique entry.
    spec_json["params"] = cfg.contains("params") ? cfg.at("params") : cfg;
    if (cfg.contains("seed")) spec_json["seed"] = cfg.at("seed");
  }
  if (a.seed) spec_json["seed"] = *a.seed;
  const TechniqueSpec spec = technique_from_json(spec_json);
  const DynamicDataset d = read_dataset(a.data);
  std::vector<std::string> warnings;
  const ProjectionSequence p = project_dynamic(d, spec, &warnings);
  print_warnings(warnings);
  write_projection(a.out, p, d);
  write_json_file(fs::path(a.out) / "technique.json", technique_to_json(spec));
  return kExitOk;
}

int run_evaluate(const std::string& data_dir, const std::string& proj_dir, const std::string& out,
                 const std::string& config) {
  const DynamicDataset d = read_dataset(data_dir);
  require_valid(d);
  const ProjectionSequence p = read_projection(proj_dir);
  EvalOptions options;
  if (!config.empty()) {
    const json cfg = read_json_file(config);
    options = eval_options_from_json(cfg.contains("k_sweep") ? cfg.at("k_sweep") : cfg);
  }
  const MetricReport report = evaluate(d, p, options);
  json j = report_to_json(report);
  j["dataset"] = d.name;
  j["technique"] = p.technique;
  j["options"] = eval_options_to_json(options);
  write_json_file(out, j);
  return kExitOk;
}

int run_benchmark_cmd(const std::string& config_file, const std::string& out, std::size_t jobs) {
  BenchmarkConfig cfg = load_config(config_file);
  fs::path out_dir = out.empty() ? cfg.output_dir : fs::path(out);
  if (out_dir.empty()) throw UsageError("no output directory: pass --out or set \"output\" in the config");
  const BenchmarkTable table = run_benchmark(cfg, resolve_jobs(jobs));
  for (const auto& cell : table.cells) {
    if (!cell.ok) std::cerr << "cell " << cell.technique << " x " << cell.dataset << " failed: " << cell.error << "\n";
    for (const auto& w : cell.warnings) std::cerr << "warning: " << cell.technique << " x " << cell.dataset << ": " << w << "\n";
  }
  const ExportSummary summary = export_report(table, out_dir, ExportOptions{cfg.histogram_bins, cfg.meta_seed});
  print_warnings(summary.warnings);
  return kExitOk;
}

int run_report(const std::string& in, const std::string& out, std::size_t bins, std::uint64_t meta_seed) {
  const BenchmarkTable table = table_from_json(read_json_file(in));
  const ExportSummary summary = export_report(table, out, ExportOptions{bins, meta_seed});
  print_warnings(summary.warnings);
  return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Benchmark suite for dynamic dimensionality reduction", "drbench"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic dataset directory");
  generate->add_option("name", gen.name, "gaussians, walk or sorts")->required()->check(CLI::IsMember({"gaussians", "walk", "sorts"}));
  generate->add_option("--seed", gen.seed, "Generator seed");
  generate->add_option("--out", gen.out, "Output directory")->required();
  generate->add_option("--classes", gen.classes, "Number of classes (gaussians, walk)");
  generate->add_option("--per-class", gen.per_class, "Points per class (gaussians, walk)");
  generate->add_option("--dims", gen.dims, "Dimensionality n (gaussians, walk)");
  generate->add_option("--timesteps", gen.timesteps, "Number of revisions T");
  generate->add_option("--algorithms", gen.algorithms, "Sorting algorithms used (sorts, at most 8)");
  generate->add_option("--arrays", gen.arrays, "Arrays per algorithm (sorts)");
  generate->add_option("--array-len", gen.array_len, "Array length (sorts)");

  std::string validate_dir;
  auto* validate = app.add_subcommand("validate", "Check a dataset directory");
  validate->add_option("--data", validate_dir, "Dataset directory")->required();

  ProjectArgs proj;
  auto* project = app.add_subcommand("project", "Project a dataset with one technique");
  project->add_option("--technique", proj.technique, "pca, tsne, dtsne or identity")
      ->required()
      ->check(CLI::IsMember({"pca", "tsne", "dtsne", "identity"}));
  project->add_option("--strategy", proj.strategy, "G (global) or TF (per timeframe)")->check(CLI::IsMember({"G", "TF"}));
  project->add_option("--data", proj.data, "Dataset directory")->required();
  project->add_option("--out", proj.out, "Projection directory")->required();
  project->add_option("--seed", proj.seed, "Seed (overrides the config)");
  project->add_option("--config", proj.config, "Technique parameter JSON");

  std::string eval_data, eval_proj, eval_out, eval_config;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Compute all metrics of one projection");
  evaluate_cmd->add_option("--data", eval_data, "Dataset directory")->required();
  evaluate_cmd->add_option("--proj", eval_proj, "Projection directory")->required();
  evaluate_cmd->add_option("--out", eval_out, "Report JSON file")->required();
  evaluate_cmd->add_option("--config", eval_config, "k-sweep override JSON");

  std::string bench_config, bench_out;
  std::size_t jobs = 0;
  auto* benchmark = app.add_subcommand("benchmark", "Run a technique x dataset benchmark");
  benchmark->add_option("--config", bench_config, "Benchmark config JSON")->required();
  benchmark->add_option("--out", bench_out, "Output directory (overrides the config)");
  benchmark->add_option("--jobs", jobs, "Parallel cell workers (default: DRBENCH_JOBS or 1)");

  std::string report_in, report_out;
  std::size_t bins = 50;
  std::uint64_t meta_seed = 0;
  auto* report = app.add_subcommand("report", "Re-export tables and plots from results.json");
  report->add_option("--in", report_in, "results.json")->required();
  report->add_option("--out", report_out, "Output directory")->required();
  report->add_option("--bins", bins, "Rank histogram bins");
  report->add_option("--meta-seed", meta_seed, "Seed of the meta projection");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*generate) return run_generate(gen);
    if (*validate) return run_validate(validate_dir);
    if (*project) return run_project(proj);
    if (*evaluate_cmd) return run_evaluate(eval_data, eval_proj, eval_out, eval_config);
    if (*benchmark) return run_benchmark_cmd(bench_config, bench_out, jobs);
    if (*report) return run_report(report_in, report_out, bins, meta_seed);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  std::cerr << app.help();
  return kExitUsage;
}

}  // namespace drbench
