#include "drbench/evaluation.hpp"

#include <stdexcept>

namespace drbench {

using nlohmann::json;

const std::array<std::string_view, kMetricCount>& metric_names() {
  static constexpr std::array<std::string_view, kMetricCount> names = {
      "S_NP",     "S_NH",      "S_Trust",    "S_Cont",     "S_Stress",   "S_Pearson",
      "S_Spearman", "S_Kendall", "T_Stress", "T_Pearson", "T_Spearman", "T_Kendall"};
  return names;
}

std::string_view metric_name(Metric m) { return metric_names()[static_cast<std::size_t>(m)]; }

bool is_stress_metric(std::size_t column) {
  return column == static_cast<std::size_t>(Metric::SpatialStress) ||
         column == static_cast<std::size_t>(Metric::TemporalStress);
}

std::vector<DistanceRankCache> revision_caches(const std::vector<Matrix>& revisions) {
  std::vector<DistanceRankCache> caches;
  caches.reserve(revisions.size());
  for (const Matrix& r : revisions) caches.emplace_back(r);
  return caches;
}

MetricReport evaluate(const DynamicDataset& d, const ProjectionSequence& p, const EvalOptions& options) {
  return evaluate(d, revision_caches(d.revisions), p, options);
}

MetricReport evaluate(const DynamicDataset& d, const std::vector<DistanceRankCache>& data_caches,
                      const ProjectionSequence& p, const EvalOptions& options) {
  const std::size_t T = d.num_timesteps();
  if (data_caches.size() != T) throw std::invalid_argument("one data cache per revision is required");
  if (const auto violations = validate_projection(p, d); !violations.empty()) {
    throw DataError("projection does not match dataset '" + d.name + "': " + violations.front().message);
  }

  MetricReport report;
  std::array<double, kMetricCount> sums{};
  for (std::size_t t = 0; t < T; ++t) {
    const DistanceRankCache proj(p.frames[t]);
    const DistanceRankCache& data = data_caches[t];
    for (std::size_t c = 0; c < kCurveMetrics.size(); ++c) {
      const NeighborhoodMetric m = kCurveMetrics[c];
      const SweepRange& range = m == NeighborhoodMetric::Hit ? options.hit : options.neighborhood;
      MetricCurve curve = multiscale_sweep(m, data, proj, d.labels, range);
      sums[c] += curve.aggregate;
      MetricCurve& acc = report.curves[c];
      if (t == 0) {
        acc.k_values = curve.k_values;
        acc.scores.assign(curve.scores.size(), 0.0);
      }
      for (std::size_t s = 0; s < curve.scores.size(); ++s) acc.scores[s] += curve.scores[s];
    }
    const ShepardPoints sp = shepard_points(data, proj);
    sums[static_cast<std::size_t>(Metric::SpatialStress)] += normalized_stress(sp, options.stress_scaling);
    sums[static_cast<std::size_t>(Metric::SpatialPearson)] += shepard_correlation(sp, CorrelationKind::Pearson);
    sums[static_cast<std::size_t>(Metric::SpatialSpearman)] += shepard_correlation(sp, CorrelationKind::Spearman);
    sums[static_cast<std::size_t>(Metric::SpatialKendall)] += shepard_correlation(sp, CorrelationKind::Kendall);
  }

  const double inv_t = 1.0 / static_cast<double>(T);
  for (std::size_t c = 0; c <= static_cast<std::size_t>(Metric::SpatialKendall); ++c) report.values[c] = sums[c] * inv_t;
  for (MetricCurve& curve : report.curves) {
    double total = 0.0;
    for (double& s : curve.scores) {
      s *= inv_t;
      total += s;
    }
    curve.aggregate = total / static_cast<double>(curve.scores.size());
  }

  const DisplacementSet ds = displacements(d, p);
  report.values[static_cast<std::size_t>(Metric::TemporalStress)] = temporal_stress(ds, options.stress_scaling);
  report.values[static_cast<std::size_t>(Metric::TemporalPearson)] = temporal_correlation(ds, CorrelationKind::Pearson);
  report.values[static_cast<std::size_t>(Metric::TemporalSpearman)] = temporal_correlation(ds, CorrelationKind::Spearman);
  report.values[static_cast<std::size_t>(Metric::TemporalKendall)] = temporal_correlation(ds, CorrelationKind::Kendall);
  return report;
}

json report_to_json(const MetricReport& r) {
  json metrics = json::object();
  for (std::size_t c = 0; c < kMetricCount; ++c) metrics[std::string(metric_names()[c])] = r.values[c];
  json curves = json::object();
  for (std::size_t c = 0; c < r.curves.size(); ++c) {
    curves[std::string(metric_names()[c])] = {
        {"k", r.curves[c].k_values}, {"scores", r.curves[c].scores}, {"aggregate", r.curves[c].aggregate}};
  }
  return {{"metrics", metrics}, {"curves", curves}};
}

MetricReport report_from_json(const json& j) {
  MetricReport r;
  const json& metrics = j.at("metrics");
  for (std::size_t c = 0; c < kMetricCount; ++c) r.values[c] = metrics.at(std::string(metric_names()[c])).get<double>();
  if (j.contains("curves")) {
    for (std::size_t c = 0; c < r.curves.size(); ++c) {
      const std::string key(metric_names()[c]);
      if (!j.at("curves").contains(key)) continue;
      const json& cj = j.at("curves").at(key);
      r.curves[c].k_values = cj.at("k").get<std::vector<std::size_t>>();
      r.curves[c].scores = cj.at("scores").get<std::vector<double>>();
      r.curves[c].aggregate = cj.at("aggregate").get<double>();
    }
  }
  return r;
}

namespace {

json range_to_json(const SweepRange& r) { return json::array({r.lo, r.hi, r.count}); }

SweepRange range_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("k sweep must be [lo, hi, count]");
  SweepRange r{j[0].get<double>(), j[1].get<double>(), j[2].get<std::size_t>()};
  if (!(r.lo > 0.0) || !(r.hi >= r.lo) || !(r.hi < 1.0) || r.count < 1) {
    throw std::invalid_argument("k sweep needs 0 < lo <= hi < 1 and count >= 1");
  }
  return r;
}

}  // namespace

json eval_options_to_json(const EvalOptions& o) {
  return {{"neighborhood", range_to_json(o.neighborhood)},
          {"hit", range_to_json(o.hit)},
          {"stress_scaling", o.stress_scaling == StressScaling::ZScore ? "zscore" : "rms"}};
}

EvalOptions eval_options_from_json(const json& j) {
  EvalOptions o;
  if (j.is_null()) return o;
  if (!j.is_object()) throw std::invalid_argument("k_sweep must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "neighborhood") o.neighborhood = range_from_json(value);
    else if (key == "hit") o.hit = range_from_json(value);
    else if (key == "stress_scaling") {
      const auto s = value.get<std::string>();
      if (s == "zscore") o.stress_scaling = StressScaling::ZScore;
      else if (s == "rms") o.stress_scaling = StressScaling::Rms;
      else throw std::invalid_argument("stress_scaling must be 'zscore' or 'rms'");
    } else {
      throw std::invalid_argument("unknown k_sweep option '" + key + "'");
    }
  }
  return o;
}

}  // namespace drbench
