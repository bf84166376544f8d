#include "drbench/pca.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace drbench {

PCAModel fit_pca(const Matrix& m) {
  if (m.rows() < 3) throw DataError("PCA needs at least 3 rows, got " + std::to_string(m.rows()));
  PCAModel model;
  model.mean = m.colwise().mean();
  const Matrix centered = m.rowwise() - model.mean;
  const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(m.rows() - 1);
  model.total_variance = cov.trace();
  if (!(model.total_variance > 0.0)) throw DataError("PCA input has zero variance");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw DataError("covariance eigendecomposition failed");
  const Eigen::Index n = cov.rows();

  model.components = Matrix::Zero(2, n);
  model.eigenvalues.setZero();
  // Eigen sorts ascending; walk from the top. With n == 1 the second axis stays zero.
  for (Eigen::Index c = 0; c < 2 && c < n; ++c) {
    const Eigen::Index src = n - 1 - c;
    Eigen::VectorXd v = solver.eigenvectors().col(src);
    Eigen::Index arg = 0;
    for (Eigen::Index j = 1; j < n; ++j)
      if (std::abs(v(j)) > std::abs(v(arg))) arg = j;
    if (v(arg) < 0.0) v = -v;
    model.components.row(c) = v.transpose();
    model.eigenvalues(c) = std::max(0.0, solver.eigenvalues()(src));
  }
  return model;
}

Matrix transform_pca(const PCAModel& model, const Matrix& m) {
  if (m.cols() != model.mean.size()) {
    throw std::invalid_argument("PCA model expects " + std::to_string(model.mean.size()) + " columns, got " +
                                std::to_string(m.cols()));
  }
  return (m.rowwise() - model.mean) * model.components.transpose();
}

}  // namespace drbench
