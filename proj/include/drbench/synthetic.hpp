#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "drbench/core_model.hpp"

namespace drbench {

/// Isotropic blobs whose spread shrinks linearly from 1.0 to 0.1.
struct GaussiansParams {
  std::size_t num_classes = 10;
  std::size_t per_class = 30;
  std::size_t n = 100;
  std::size_t T = 10;
};

/// Three clusters that approach, cross through a common midpoint and drift apart.
struct WalkParams {
  std::size_t num_classes = 3;
  std::size_t per_class = 100;
  std::size_t n = 100;
  std::size_t T = 12;
  double amplitude = 20.0;  // distance of each start center from the midpoint
  double noise = 1.0;       // per-point offset spread
};

/// Partially sorted arrays of several sorting algorithms.
struct SortsParams {
  std::size_t algorithms = 8;
  std::size_t arrays_per_algorithm = 10;
  std::size_t array_len = 100;
  std::size_t T = 20;
};

DynamicDataset gen_gaussians(std::uint64_t seed, const GaussiansParams& params = {});
DynamicDataset gen_walk(std::uint64_t seed, const WalkParams& params = {});
DynamicDataset gen_sorts(std::uint64_t seed, const SortsParams& params = {});

/// bubble, insertion, selection, shell, comb, quick, merge, heap.
const std::vector<std::string>& sorting_algorithm_names();

/// One atomic array mutation: a store (`value` into `i`) or a swap of `i` and `j`.
struct SortOp {
  bool is_swap = false;
  std::size_t i = 0;
  std::size_t j = 0;
  double value = 0.0;
};

/// Runs sorting algorithm `algorithm` (index into sorting_algorithm_names())
/// on a copy of `input`, returning its mutation log.
std::vector<SortOp> record_sort(std::size_t algorithm, std::vector<double> input);

/// States after round(W s / (T-1)) of the W logged mutations, s = 0..T-1.
std::vector<std::vector<double>> snapshot_states(const std::vector<double>& input, const std::vector<SortOp>& ops,
                                                 std::size_t T);

/// Builds a generator by name from JSON params; unknown names or keys throw
/// std::invalid_argument. The dataset name defaults to `<generator>`.
DynamicDataset generate_by_name(std::string_view generator, std::uint64_t seed, const nlohmann::json& params);

}  // namespace drbench
