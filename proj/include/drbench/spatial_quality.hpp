#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "drbench/correlation.hpp"
#include "drbench/neighbors.hpp"

namespace drbench {

/// Scores of one neighborhood metric over a sweep of k values.
struct MetricCurve {
  std::vector<std::size_t> k_values;
  std::vector<double> scores;
  double aggregate = 0.0;  // arithmetic mean of scores
};

/// Data-space vs projected distance for every unordered pair (i < j),
/// row-major over (i, j).
struct ShepardPoints {
  std::vector<double> d;
  std::vector<double> dbar;
  std::size_t size() const { return d.size(); }
};

enum class NeighborhoodMetric { Preservation, Hit, Trustworthiness, Continuity };

/// How distance vectors are rescaled before a stress ratio.
enum class StressScaling {
  ZScore,  // subtract mean, divide by standard deviation
  Rms,     // divide by root mean square only
};

double neighborhood_preservation(const DistanceRankCache& data, const DistanceRankCache& proj, std::size_t k);
double neighborhood_hit(const DistanceRankCache& proj, std::span<const int> labels, std::size_t k);

/// Venna-Kaski trustworthiness: false projected neighbors are penalized by
/// their data-space rank. Requires 1 <= k < N/2.
double trustworthiness(const DistanceRankCache& data, const DistanceRankCache& proj, std::size_t k);

/// Missing neighbors are penalized by their projected rank. Requires 1 <= k < N/2.
double continuity(const DistanceRankCache& data, const DistanceRankCache& proj, std::size_t k);

/// Fractions of N swept by the neighborhood metrics.
struct SweepRange {
  double lo = 0.01;
  double hi = 0.20;
  std::size_t count = 20;
};

/// The default sweep for `metric`: 1%..20% of N, or 0.25%..5% for the hit rate.
SweepRange default_sweep(NeighborhoodMetric metric);

/// k = round(N f) for `count` evenly spaced fractions f in [lo, hi], clamped
/// to [1, N-1] and deduplicated in order.
std::vector<std::size_t> sweep_k_values(std::size_t n_points, const SweepRange& range);

/// Evaluates `metric` at every k of the sweep. `labels` is required for the
/// hit rate and ignored otherwise.
MetricCurve multiscale_sweep(NeighborhoodMetric metric, const DistanceRankCache& data, const DistanceRankCache& proj,
                             std::span<const int> labels, const SweepRange& range);
MetricCurve multiscale_sweep(NeighborhoodMetric metric, const DistanceRankCache& data, const DistanceRankCache& proj,
                             std::span<const int> labels = {});

ShepardPoints shepard_points(const Matrix& data_rev, const Matrix& proj_rev);
ShepardPoints shepard_points(const DistanceRankCache& data, const DistanceRankCache& proj);

/// sum (x - y)^2 / sum x^2 after rescaling each vector independently.
/// Throws DataError when `reference` has zero variance (zero RMS for Rms);
/// a constant `other` rescales to all zeros.
double standardized_stress(std::span<const double> reference, std::span<const double> other,
                           StressScaling scaling = StressScaling::ZScore);

double normalized_stress(const ShepardPoints& sp, StressScaling scaling = StressScaling::ZScore);

double shepard_correlation(const ShepardPoints& sp, CorrelationKind kind);

struct RankHistogramBin {
  double low = 0.0;
  double high = 0.0;
  double frequency = 0.0;
};

/// Histogram of |rank(a_p) - rank(b_p)| (mean ranks for ties), `bins` equal
/// bins over [0, P-1], normalized to frequencies. The last bin is closed.
std::vector<RankHistogramBin> rank_difference_histogram(std::span<const double> a, std::span<const double> b,
                                                        std::size_t bins);

}  // namespace drbench
