#pragma once

#include <cstddef>
#include <vector>

#include "drbench/correlation.hpp"
#include "drbench/core_model.hpp"
#include "drbench/spatial_quality.hpp"

namespace drbench {

/// Per-point movement between consecutive timesteps, in data space (delta)
/// and in the projection (delta_bar). Entry order is timestep-major:
/// (t = 0, i = 0..N-1), (t = 1, ...), where t indexes the step t -> t+1.
struct DisplacementSet {
  std::vector<std::size_t> point;
  std::vector<std::size_t> step;
  std::vector<double> delta;
  std::vector<double> delta_bar;
  std::size_t size() const { return delta.size(); }
};

/// Throws std::invalid_argument when the frame counts or point counts differ.
DisplacementSet displacements(const DynamicDataset& d, const ProjectionSequence& p);

/// Stress between standardized delta and delta_bar, pooled over all (i, t).
/// Throws DataError("temporally degenerate dataset") when delta is constant.
double temporal_stress(const DisplacementSet& ds, StressScaling scaling = StressScaling::ZScore);

/// Correlation of delta with delta_bar pooled over all points and steps.
double temporal_correlation(const DisplacementSet& ds, CorrelationKind kind);

}  // namespace drbench
