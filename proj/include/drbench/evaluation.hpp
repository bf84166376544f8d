#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "drbench/core_model.hpp"
#include "drbench/neighbors.hpp"
#include "drbench/spatial_quality.hpp"
#include "drbench/temporal_quality.hpp"

namespace drbench {

/// The twelve metrics, in reporting order.
enum class Metric {
  SpatialNP,
  SpatialNH,
  SpatialTrust,
  SpatialCont,
  SpatialStress,
  SpatialPearson,
  SpatialSpearman,
  SpatialKendall,
  TemporalStress,
  TemporalPearson,
  TemporalSpearman,
  TemporalKendall,
};

inline constexpr std::size_t kMetricCount = 12;

/// Column names: S_NP, S_NH, ..., T_Kendall.
const std::array<std::string_view, kMetricCount>& metric_names();
std::string_view metric_name(Metric m);
bool is_stress_metric(std::size_t column);

/// Neighborhood metrics that carry per-k curves, in Metric order.
inline constexpr std::array<NeighborhoodMetric, 4> kCurveMetrics = {
    NeighborhoodMetric::Preservation, NeighborhoodMetric::Hit, NeighborhoodMetric::Trustworthiness,
    NeighborhoodMetric::Continuity};

struct MetricReport {
  std::array<double, kMetricCount> values{};
  /// Per-k scores averaged over revisions, for S_NP, S_NH, S_Trust, S_Cont.
  std::array<MetricCurve, 4> curves;

  double operator[](Metric m) const { return values[static_cast<std::size_t>(m)]; }
};

struct EvalOptions {
  SweepRange neighborhood = default_sweep(NeighborhoodMetric::Preservation);  // NP, trust, continuity
  SweepRange hit = default_sweep(NeighborhoodMetric::Hit);
  StressScaling stress_scaling = StressScaling::ZScore;
};

/// Distance/rank caches of every revision, reusable across techniques.
std::vector<DistanceRankCache> revision_caches(const std::vector<Matrix>& revisions);

/// All twelve metrics for one projection. Spatial metrics are computed per
/// revision and averaged over revisions; neighborhood metrics first average
/// over their k sweep. Temporal metrics pool every point and step.
MetricReport evaluate(const DynamicDataset& d, const ProjectionSequence& p, const EvalOptions& options = {});
MetricReport evaluate(const DynamicDataset& d, const std::vector<DistanceRankCache>& data_caches,
                      const ProjectionSequence& p, const EvalOptions& options = {});

nlohmann::json report_to_json(const MetricReport& r);
MetricReport report_from_json(const nlohmann::json& j);

nlohmann::json eval_options_to_json(const EvalOptions& o);
/// Reads overrides {"neighborhood": [lo, hi, count], "hit": [...], "stress_scaling": "zscore"|"rms"}.
EvalOptions eval_options_from_json(const nlohmann::json& j);

}  // namespace drbench
