#pragma once

#include <random>

#include "drbench/core_model.hpp"

namespace fixtures {

// Four revisions of 3D data. In revisions 0 and 1 the x axis carries the most
// variance, from revision 2 on the y axis does.
inline drbench::DynamicDataset variance_swap(std::uint64_t seed, std::size_t N = 200) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  drbench::DynamicDataset d;
  d.name = "variance_swap";
  d.class_names = {"all"};
  d.labels.assign(N, 0);
  for (int t = 0; t < 4; ++t) {
    const double sx = t < 2 ? 3.0 : 1.0, sy = t < 2 ? 1.0 : 3.0;
    drbench::Matrix r(static_cast<Eigen::Index>(N), 3);
    for (Eigen::Index i = 0; i < r.rows(); ++i) r.row(i) << sx * g(rng), sy * g(rng), 0.2 * g(rng);
    d.revisions.push_back(r);
  }
  return d;
}

// 2D data whose points wander a little between revisions.
inline drbench::DynamicDataset planar(std::uint64_t seed, std::size_t N = 40, std::size_t T = 3) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  drbench::DynamicDataset d;
  d.name = "planar" + std::to_string(seed);
  d.class_names = {"a", "b"};
  for (std::size_t i = 0; i < N; ++i) d.labels.push_back(i < N / 2 ? 0 : 1);
  drbench::Matrix r(static_cast<Eigen::Index>(N), 2);
  for (Eigen::Index i = 0; i < r.rows(); ++i) r.row(i) << g(rng) + (i < r.rows() / 2 ? 0.0 : 6.0), g(rng);
  for (std::size_t t = 0; t < T; ++t) {
    d.revisions.push_back(r);
    for (Eigen::Index i = 0; i < r.size(); ++i) r.data()[i] += 0.3 * g(rng);
  }
  return d;
}

}  // namespace fixtures
