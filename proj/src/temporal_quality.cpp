#include "drbench/temporal_quality.hpp"

#include <stdexcept>
#include <string>

namespace drbench {

DisplacementSet displacements(const DynamicDataset& d, const ProjectionSequence& p) {
  const std::size_t T = d.num_timesteps();
  const auto N = static_cast<Eigen::Index>(d.num_samples());
  if (p.frames.size() != T) {
    throw std::invalid_argument("projection has " + std::to_string(p.frames.size()) + " frames, dataset has " +
                                std::to_string(T) + " revisions");
  }
  for (std::size_t t = 0; t < T; ++t) {
    if (d.revisions[t].rows() != N || p.frames[t].rows() != N) {
      throw std::invalid_argument("point count mismatch at timestep " + std::to_string(t));
    }
  }
  DisplacementSet ds;
  const std::size_t entries = T < 2 ? 0 : static_cast<std::size_t>(N) * (T - 1);
  ds.point.reserve(entries);
  ds.step.reserve(entries);
  ds.delta.reserve(entries);
  ds.delta_bar.reserve(entries);
  for (std::size_t t = 0; t + 1 < T; ++t) {
    for (Eigen::Index i = 0; i < N; ++i) {
      ds.point.push_back(static_cast<std::size_t>(i));
      ds.step.push_back(t);
      ds.delta.push_back((d.revisions[t].row(i) - d.revisions[t + 1].row(i)).norm());
      ds.delta_bar.push_back((p.frames[t].row(i) - p.frames[t + 1].row(i)).norm());
    }
  }
  return ds;
}

double temporal_stress(const DisplacementSet& ds, StressScaling scaling) {
  try {
    return standardized_stress(ds.delta, ds.delta_bar, scaling);
  } catch (const DataError&) {
    throw DataError("temporally degenerate dataset: data-space displacements have zero variance");
  }
}

double temporal_correlation(const DisplacementSet& ds, CorrelationKind kind) {
  return correlation(ds.delta, ds.delta_bar, kind);
}

}  // namespace drbench
