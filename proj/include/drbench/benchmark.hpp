#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "drbench/core_model.hpp"
#include "drbench/evaluation.hpp"
#include "drbench/projection.hpp"

namespace drbench {

/// Where a benchmark dataset comes from: a dataset directory or a generator.
struct DatasetSource {
  std::string name;  // empty: taken from the dataset
  std::filesystem::path path;
  std::string generator;
  std::uint64_t seed = 0;
  nlohmann::json params = nlohmann::json::object();
};

struct TechniqueEntry {
  TechniqueSpec spec;
  std::string label;  // unique column label; defaults to spec.label()
};

struct BenchmarkConfig {
  std::vector<DatasetSource> datasets;
  std::vector<TechniqueEntry> techniques;
  EvalOptions eval;
  std::filesystem::path output_dir;
  std::size_t histogram_bins = 50;
  std::uint64_t meta_seed = 0;
  nlohmann::json source = nlohmann::json::object();  // the parsed config, for provenance
};

/// Parses the JSON config. Relative dataset paths resolve against `base_dir`.
/// Throws std::invalid_argument on invalid configs.
BenchmarkConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
BenchmarkConfig load_config(const std::filesystem::path& file);

/// Loads or generates the dataset a source describes.
DynamicDataset load_dataset(const DatasetSource& source);

struct CellResult {
  std::string technique;
  std::string dataset;
  bool ok = false;
  std::string error;
  std::vector<std::string> warnings;
  MetricReport report;
  /// Present only for in-memory runs; used for per-cell exports.
  std::shared_ptr<const ProjectionSequence> projection;
};

struct Provenance {
  std::string config_hash;  // FNV-1a of the canonical config JSON
  std::vector<std::uint64_t> technique_seeds;
  std::vector<std::uint64_t> dataset_seeds;
  std::string started_at;
  std::string finished_at;
};

/// Technique x dataset result cube. Cells are dataset-major: cell(d, t) is
/// cells[d * techniques.size() + t].
struct BenchmarkTable {
  std::vector<std::string> techniques;
  std::vector<std::string> datasets;
  std::vector<CellResult> cells;
  std::vector<std::optional<DatasetTraits>> traits;  // per dataset; empty when it failed to load
  std::vector<std::string> dataset_errors;           // per dataset; empty when loaded
  Provenance provenance;
  /// Loaded datasets for per-cell exports (null when unavailable).
  std::vector<std::shared_ptr<const DynamicDataset>> dataset_data;

  const CellResult& cell(std::size_t d, std::size_t t) const { return cells[d * techniques.size() + t]; }
};

/// Projects and evaluates every (technique, dataset) cell with up to `jobs`
/// workers. Failures are recorded per cell and never abort the run.
BenchmarkTable run_benchmark(const BenchmarkConfig& config, std::size_t jobs = 1);

/// Cells x 12 values in [0, 1], 1 best. NaN for failed cells.
struct NormalizedTable {
  std::vector<std::array<double, kMetricCount>> rows;
  std::vector<std::string> warnings;
};

/// Per metric (v - min) / (max - min) over successful cells; stress columns
/// are inverted. Constant columns map to 1 with a warning.
NormalizedTable normalize_columns(const BenchmarkTable& t);

enum class MetricGroup { Distance, Neighborhood, Temporal };
inline constexpr std::array<const char*, 3> kMetricGroupNames = {"distance", "neighborhood", "temporal"};
inline constexpr std::array<const char*, 6> kTraitNames = {"N", "T", "n", "classes", "rho_n", "sigma_n"};

std::array<double, 6> trait_vector(const DatasetTraits& traits);

/// traits x groups Pearson correlations; nullopt marks an undefined entry.
using TraitCorrelation = std::array<std::array<std::optional<double>, 3>, 6>;

/// Correlates per-dataset group scores with traits across datasets.
/// Requires at least 3 datasets.
TraitCorrelation trait_group_correlation(const std::vector<DatasetTraits>& traits,
                                         const std::vector<std::array<double, 3>>& group_scores);

/// Group score per dataset: mean of its group's normalized metrics over all
/// successful techniques. Datasets without traits or successful cells are skipped.
TraitCorrelation trait_metric_correlation(const BenchmarkTable& t);

struct MetaPoint {
  std::string technique;
  std::string dataset;
  double x = 0.0;
  double y = 0.0;
};

/// 2D t-SNE map of the normalized 12-metric vectors of successful cells.
/// Requires at least 5 such cells.
std::vector<MetaPoint> meta_projection(const BenchmarkTable& t, std::uint64_t seed);

/// Number of workers: `requested` if nonzero, else DRBENCH_JOBS, else 1.
std::size_t resolve_jobs(std::size_t requested);

std::string fnv1a_hex(std::string_view text);

}  // namespace drbench
