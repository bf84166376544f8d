#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace drbench {

/// Row-major dense matrix; one row per sample.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Malformed or degenerate input data (as opposed to a programming error).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// T revisions of an N x n matrix plus per-point class labels.
struct DynamicDataset {
  std::string name;
  std::vector<Matrix> revisions;
  std::vector<int> labels;
  std::vector<std::string> class_names;

  std::size_t num_timesteps() const { return revisions.size(); }
  std::size_t num_samples() const {
    return revisions.empty() ? 0 : static_cast<std::size_t>(revisions.front().rows());
  }
  std::size_t num_dims() const {
    return revisions.empty() ? 0 : static_cast<std::size_t>(revisions.front().cols());
  }
};

/// T frames of N x 2 projected coordinates.
struct ProjectionSequence {
  std::string dataset_name;
  std::string technique;
  std::vector<Matrix> frames;
};

struct DatasetTraits {
  std::size_t num_samples = 0;
  std::size_t num_timesteps = 0;
  std::size_t num_dims = 0;
  std::size_t num_classes = 0;
  double intrinsic_dim_ratio = 0.0;  // rho_n
  double sparsity_ratio = 0.0;       // sigma_n
};

struct Violation {
  enum class Kind { TooFewTimesteps, TooFewSamples, NoDimensions, ShapeMismatch, LabelCount, LabelRange, NonFinite };
  Kind kind;
  std::string message;
  // -1 where not applicable.
  long revision = -1;
  long row = -1;
  long col = -1;
};

using ValidationReport = std::vector<Violation>;

/// Every invariant violation of `d`; an empty report means the dataset is valid.
ValidationReport validate_dataset(const DynamicDataset& d);

/// Every invariant violation of `p`, checked against the dataset it projects.
ValidationReport validate_projection(const ProjectionSequence& p, const DynamicDataset& d);

/// Throws DataError listing the first few violations when `d` is invalid.
void require_valid(const DynamicDataset& d);

/// Stacks all revisions into one (T*N) x n matrix, revision-major.
Matrix concatenate_revisions(const std::vector<Matrix>& revisions);

/// Descriptive traits of a dataset. rho_n and sigma_n are computed on the
/// row-concatenation of all revisions. Throws DataError on zero total variance.
DatasetTraits compute_traits(const DynamicDataset& d);

}  // namespace drbench
