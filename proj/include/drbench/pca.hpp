#pragma once

#include "drbench/core_model.hpp"

namespace drbench {

/// Two-component PCA model.
struct PCAModel {
  Eigen::RowVectorXd mean;
  Matrix components;           // 2 x n, orthonormal rows
  Eigen::Vector2d eigenvalues; // descending, sample covariance (N - 1 divisor)
  double total_variance = 0.0; // trace of the covariance
};

/// Top-2 eigenpairs of the mean-centered covariance. Each component's entry
/// of largest magnitude is made positive. Throws DataError on zero variance
/// or fewer than 3 rows.
PCAModel fit_pca(const Matrix& m);

/// (m - mean) * components^T. Throws std::invalid_argument on column mismatch.
Matrix transform_pca(const PCAModel& model, const Matrix& m);

}  // namespace drbench
