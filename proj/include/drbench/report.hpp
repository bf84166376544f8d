#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "drbench/benchmark.hpp"

namespace drbench {

/// results.json payload: every cell with metrics and curves, traits, provenance.
nlohmann::json table_to_json(const BenchmarkTable& t);
/// Inverse of table_to_json. Projections and dataset data are not restored.
BenchmarkTable table_from_json(const nlohmann::json& j);

/// One row per cell: technique,dataset,S_NP,...,T_Kendall. Failed cells leave
/// the metric fields empty.
std::string results_csv(const BenchmarkTable& t);
std::string normalized_csv(const BenchmarkTable& t, const NormalizedTable& norm);
/// trait,distance,neighborhood,temporal; undefined entries read "undefined".
std::string trait_correlation_csv(const TraitCorrelation& corr);

/// Parses results_csv output back into (technique, dataset, values) rows.
struct CsvRow {
  std::string technique;
  std::string dataset;
  std::array<std::optional<double>, kMetricCount> values;
};
std::vector<CsvRow> parse_results_csv(const std::string& text);

/// Per-point polylines over time, colored by class, scaled to the cell's own bounding box.
std::string trails_svg(const DynamicDataset& d, const ProjectionSequence& p);
/// Technique x metric heatmap of normalized values averaged over datasets; light is better.
std::string overview_svg(const BenchmarkTable& t, const NormalizedTable& norm);
std::string meta_projection_svg(const std::vector<MetaPoint>& points);

/// d,dbar rows for every pair of every revision.
void write_shepard_csv(const std::filesystem::path& file, const DynamicDataset& d, const ProjectionSequence& p);
/// point,t,delta,delta_bar (raw, not standardized).
void write_displacements_csv(const std::filesystem::path& file, const DisplacementSet& ds);
/// bin_low,bin_high,frequency
void write_histogram_csv(const std::filesystem::path& file, const std::vector<RankHistogramBin>& hist);

struct ExportOptions {
  std::size_t histogram_bins = 50;
  std::uint64_t meta_seed = 0;
};

struct ExportSummary {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> warnings;
};

/// Writes results.json, results.csv, normalized.csv, trait_correlation.csv,
/// overview.svg, meta_projection.{csv,svg} and, for cells that still hold
/// their projection, cells/<technique>__<dataset>/ with shepard_spatial.csv,
/// displacements.csv, rank_hist_spatial.csv, rank_hist_temporal.csv and
/// trails.svg. Analyses whose preconditions fail are skipped with a warning.
ExportSummary export_report(const BenchmarkTable& t, const std::filesystem::path& out_dir,
                            const ExportOptions& options = {});

}  // namespace drbench
