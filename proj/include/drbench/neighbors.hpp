#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "drbench/core_model.hpp"

namespace drbench {

/// Exact pairwise Euclidean distances (symmetric, zero diagonal).
Matrix pairwise_distances(const Matrix& m);

/// Pairwise distances and neighbor ranks of one point set.
///
/// Row i's neighbor ordering sorts all j != i by ascending distance, ties
/// broken by ascending index. Ranks are 1-based with self excluded, so each
/// rank row is a permutation of 1..N-1 over j != i (rank(i, i) is 0).
/// Memory is O(N^2): one double and two 32-bit ints per ordered pair.
class DistanceRankCache {
 public:
  explicit DistanceRankCache(const Matrix& points);

  std::size_t size() const { return n_; }
  double dist(std::size_t i, std::size_t j) const { return dist_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }
  std::uint32_t rank(std::size_t i, std::size_t j) const { return rank_[i * n_ + j]; }
  /// All N-1 neighbors of i, nearest first.
  std::span<const std::uint32_t> ordering(std::size_t i) const {
    return {order_.data() + i * (n_ - 1), n_ - 1};
  }
  /// The k nearest neighbors of i. Requires 1 <= k <= N-1.
  std::span<const std::uint32_t> knn(std::size_t i, std::size_t k) const;
  const Matrix& distances() const { return dist_; }

 private:
  std::size_t n_;
  Matrix dist_;
  std::vector<std::uint32_t> rank_;
  std::vector<std::uint32_t> order_;
};

/// Convenience wrapper.
inline DistanceRankCache rank_cache(const Matrix& m) { return DistanceRankCache(m); }

/// N lists of the k nearest neighbors. Throws std::invalid_argument unless 1 <= k <= N-1.
std::vector<std::vector<std::uint32_t>> knn_indices(const DistanceRankCache& cache, std::size_t k);

}  // namespace drbench
