#include "drbench/spatial_quality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace drbench {

namespace {

void check_same_size(const DistanceRankCache& data, const DistanceRankCache& proj) {
  if (data.size() != proj.size()) {
    throw std::invalid_argument("point count mismatch: data has " + std::to_string(data.size()) +
                                ", projection has " + std::to_string(proj.size()));
  }
}

void check_k(std::size_t n, std::size_t k) {
  if (k < 1 || k > n - 1) {
    throw std::invalid_argument("k = " + std::to_string(k) + " outside [1, " + std::to_string(n - 1) + "]");
  }
}

// 2 / (N k (2N - 3k - 1)); positive iff k < N/2 (for integer N, k >= 1).
double rank_penalty_normalizer(std::size_t n, std::size_t k) {
  check_k(n, k);
  if (2 * k >= n) {
    throw std::invalid_argument("k = " + std::to_string(k) + " must be below N/2 = " + std::to_string(n / 2.0));
  }
  const double N = static_cast<double>(n);
  const double K = static_cast<double>(k);
  return 2.0 / (N * K * (2.0 * N - 3.0 * K - 1.0));
}

// Sum over i of (rank_in(ranking) - k) for neighbors that are among i's k
// nearest in `neighbors` but not among them in `ranking`.
double rank_penalty(const DistanceRankCache& neighbors, const DistanceRankCache& ranking, std::size_t k) {
  double sum = 0.0;
  for (std::size_t i = 0; i < neighbors.size(); ++i) {
    for (std::uint32_t j : neighbors.knn(i, k)) {
      const std::uint32_t r = ranking.rank(i, j);
      if (r > k) sum += static_cast<double>(r - k);
    }
  }
  return sum;
}

}  // namespace

double neighborhood_preservation(const DistanceRankCache& data, const DistanceRankCache& proj, std::size_t k) {
  check_same_size(data, proj);
  check_k(data.size(), k);
  std::size_t shared = 0;
  for (std::size_t i = 0; i < data.size(); ++i)
    for (std::uint32_t j : data.knn(i, k))
      if (proj.rank(i, j) <= k) ++shared;
  return static_cast<double>(shared) / static_cast<double>(data.size() * k);
}

double neighborhood_hit(const DistanceRankCache& proj, std::span<const int> labels, std::size_t k) {
  if (labels.size() != proj.size()) {
    throw std::invalid_argument("label count " + std::to_string(labels.size()) + " does not match " +
                                std::to_string(proj.size()) + " points");
  }
  check_k(proj.size(), k);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < proj.size(); ++i)
    for (std::uint32_t j : proj.knn(i, k))
      if (labels[j] == labels[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(proj.size() * k);
}

double trustworthiness(const DistanceRankCache& data, const DistanceRankCache& proj, std::size_t k) {
  check_same_size(data, proj);
  const double norm = rank_penalty_normalizer(data.size(), k);
  return 1.0 - norm * rank_penalty(proj, data, k);
}

double continuity(const DistanceRankCache& data, const DistanceRankCache& proj, std::size_t k) {
  check_same_size(data, proj);
  const double norm = rank_penalty_normalizer(data.size(), k);
  return 1.0 - norm * rank_penalty(data, proj, k);
}

SweepRange default_sweep(NeighborhoodMetric metric) {
  if (metric == NeighborhoodMetric::Hit) return SweepRange{0.0025, 0.05, 20};
  return SweepRange{0.01, 0.20, 20};
}

std::vector<std::size_t> sweep_k_values(std::size_t n_points, const SweepRange& range) {
  if (n_points < 2) throw std::invalid_argument("sweep needs at least 2 points");
  if (range.count < 1) throw std::invalid_argument("sweep needs at least one k value");
  std::vector<std::size_t> ks;
  for (std::size_t m = 0; m < range.count; ++m) {
    const double f = range.count == 1
                         ? range.lo
                         : range.lo + (range.hi - range.lo) * static_cast<double>(m) / static_cast<double>(range.count - 1);
    auto k = static_cast<long long>(std::llround(static_cast<double>(n_points) * f));
    k = std::clamp<long long>(k, 1, static_cast<long long>(n_points) - 1);
    const auto ku = static_cast<std::size_t>(k);
    if (std::find(ks.begin(), ks.end(), ku) == ks.end()) ks.push_back(ku);
  }
  return ks;
}

MetricCurve multiscale_sweep(NeighborhoodMetric metric, const DistanceRankCache& data, const DistanceRankCache& proj,
                             std::span<const int> labels, const SweepRange& range) {
  check_same_size(data, proj);
  MetricCurve curve;
  curve.k_values = sweep_k_values(data.size(), range);
  curve.scores.reserve(curve.k_values.size());
  for (std::size_t k : curve.k_values) {
    double v = 0.0;
    switch (metric) {
      case NeighborhoodMetric::Preservation: v = neighborhood_preservation(data, proj, k); break;
      case NeighborhoodMetric::Hit: v = neighborhood_hit(proj, labels, k); break;
      case NeighborhoodMetric::Trustworthiness: v = trustworthiness(data, proj, k); break;
      case NeighborhoodMetric::Continuity: v = continuity(data, proj, k); break;
    }
    curve.scores.push_back(v);
  }
  curve.aggregate = std::accumulate(curve.scores.begin(), curve.scores.end(), 0.0) /
                    static_cast<double>(curve.scores.size());
  return curve;
}

MetricCurve multiscale_sweep(NeighborhoodMetric metric, const DistanceRankCache& data, const DistanceRankCache& proj,
                             std::span<const int> labels) {
  return multiscale_sweep(metric, data, proj, labels, default_sweep(metric));
}

ShepardPoints shepard_points(const DistanceRankCache& data, const DistanceRankCache& proj) {
  check_same_size(data, proj);
  const std::size_t n = data.size();
  ShepardPoints sp;
  sp.d.reserve(n * (n - 1) / 2);
  sp.dbar.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      sp.d.push_back(data.dist(i, j));
      sp.dbar.push_back(proj.dist(i, j));
    }
  }
  return sp;
}

ShepardPoints shepard_points(const Matrix& data_rev, const Matrix& proj_rev) {
  if (data_rev.rows() != proj_rev.rows()) {
    throw std::invalid_argument("point count mismatch: data has " + std::to_string(data_rev.rows()) +
                                ", projection has " + std::to_string(proj_rev.rows()));
  }
  const Matrix d = pairwise_distances(data_rev);
  const Matrix dbar = pairwise_distances(proj_rev);
  const Eigen::Index n = d.rows();
  ShepardPoints sp;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      sp.d.push_back(d(i, j));
      sp.dbar.push_back(dbar(i, j));
    }
  }
  return sp;
}

namespace {

// Rescaled copy of v; returns false when v is degenerate for the scaling.
bool rescale(std::span<const double> v, StressScaling scaling, std::vector<double>& out) {
  const double n = static_cast<double>(v.size());
  out.assign(v.begin(), v.end());
  if (scaling == StressScaling::ZScore) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / n);
    if (!(sd > 0.0)) return false;
    for (double& x : out) x = (x - mean) / sd;
  } else {
    double ss = 0.0;
    for (double x : v) ss += x * x;
    const double rms = std::sqrt(ss / n);
    if (!(rms > 0.0)) return false;
    for (double& x : out) x /= rms;
  }
  return true;
}

}  // namespace

double standardized_stress(std::span<const double> reference, std::span<const double> other, StressScaling scaling) {
  if (reference.size() != other.size()) throw std::invalid_argument("stress inputs differ in length");
  if (reference.size() < 2) throw std::invalid_argument("stress needs at least 2 values");
  std::vector<double> x, y;
  if (!rescale(reference, scaling, x)) throw DataError("stress undefined: reference distances have zero variance");
  if (!rescale(other, scaling, y)) std::fill(y.begin(), y.end(), 0.0);
  double num = 0.0, den = 0.0;
  for (std::size_t p = 0; p < x.size(); ++p) {
    num += (x[p] - y[p]) * (x[p] - y[p]);
    den += x[p] * x[p];
  }
  return num / den;
}

double normalized_stress(const ShepardPoints& sp, StressScaling scaling) {
  return standardized_stress(sp.d, sp.dbar, scaling);
}

double shepard_correlation(const ShepardPoints& sp, CorrelationKind kind) { return correlation(sp.d, sp.dbar, kind); }

std::vector<RankHistogramBin> rank_difference_histogram(std::span<const double> a, std::span<const double> b,
                                                        std::size_t bins) {
  if (bins < 1) throw std::invalid_argument("histogram needs at least one bin");
  if (a.size() != b.size()) throw std::invalid_argument("histogram inputs differ in length");
  if (a.size() < 2) throw std::invalid_argument("histogram needs at least 2 pairs");
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const double span = static_cast<double>(a.size() - 1);
  const double width = span / static_cast<double>(bins);

  std::vector<std::size_t> counts(bins, 0);
  for (std::size_t p = 0; p < ra.size(); ++p) {
    const double diff = std::abs(ra[p] - rb[p]);
    auto bin = static_cast<std::size_t>(diff / width);
    counts[std::min(bin, bins - 1)]++;
  }
  std::vector<RankHistogramBin> hist(bins);
  for (std::size_t b2 = 0; b2 < bins; ++b2) {
    hist[b2].low = width * static_cast<double>(b2);
    hist[b2].high = b2 + 1 == bins ? span : width * static_cast<double>(b2 + 1);
    hist[b2].frequency = static_cast<double>(counts[b2]) / static_cast<double>(ra.size());
  }
  return hist;
}

}  // namespace drbench
