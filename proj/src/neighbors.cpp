#include "drbench/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace drbench {

Matrix pairwise_distances(const Matrix& m) {
  const Eigen::Index n = m.rows();
  const Eigen::Index d = m.cols();
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double* xi = m.row(i).data();
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double* xj = m.row(j).data();
      double s = 0.0;
      for (Eigen::Index c = 0; c < d; ++c) {
        const double diff = xi[c] - xj[c];
        s += diff * diff;
      }
      const double dist = std::sqrt(s);
      out(i, j) = dist;
      out(j, i) = dist;
    }
  }
  return out;
}

DistanceRankCache::DistanceRankCache(const Matrix& points)
    : n_(static_cast<std::size_t>(points.rows())), dist_(pairwise_distances(points)) {
  if (n_ < 2) throw std::invalid_argument("rank cache needs at least 2 points");
  rank_.assign(n_ * n_, 0);
  order_.resize(n_ * (n_ - 1));
  std::vector<std::uint32_t> idx;
  idx.reserve(n_ - 1);
  for (std::size_t i = 0; i < n_; ++i) {
    idx.clear();
    for (std::size_t j = 0; j < n_; ++j)
      if (j != i) idx.push_back(static_cast<std::uint32_t>(j));
    const double* row = dist_.row(static_cast<Eigen::Index>(i)).data();
    std::sort(idx.begin(), idx.end(), [row](std::uint32_t a, std::uint32_t b) {
      return row[a] < row[b] || (row[a] == row[b] && a < b);
    });
    std::copy(idx.begin(), idx.end(), order_.begin() + static_cast<std::ptrdiff_t>(i * (n_ - 1)));
    for (std::size_t r = 0; r < idx.size(); ++r) rank_[i * n_ + idx[r]] = static_cast<std::uint32_t>(r + 1);
  }
}

std::span<const std::uint32_t> DistanceRankCache::knn(std::size_t i, std::size_t k) const {
  if (k < 1 || k > n_ - 1) {
    throw std::invalid_argument("k = " + std::to_string(k) + " outside [1, " + std::to_string(n_ - 1) + "]");
  }
  return ordering(i).first(k);
}

std::vector<std::vector<std::uint32_t>> knn_indices(const DistanceRankCache& cache, std::size_t k) {
  std::vector<std::vector<std::uint32_t>> out(cache.size());
  for (std::size_t i = 0; i < cache.size(); ++i) {
    const auto nn = cache.knn(i, k);
    out[i].assign(nn.begin(), nn.end());
  }
  return out;
}

}  // namespace drbench
