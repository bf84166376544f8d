#include "drbench/core_model.hpp"

#include <cmath>
#include <sstream>

namespace drbench {

namespace {

Violation make_violation(Violation::Kind kind, std::string msg, long t = -1, long i = -1, long j = -1) {
  return Violation{kind, std::move(msg), t, i, j};
}

}  // namespace

ValidationReport validate_dataset(const DynamicDataset& d) {
  ValidationReport report;
  const auto T = static_cast<long>(d.revisions.size());
  if (T < 2) {
    report.push_back(make_violation(Violation::Kind::TooFewTimesteps,
                                    "dataset has " + std::to_string(T) + " revisions, need at least 2"));
  }
  if (T == 0) return report;

  const long N = d.revisions.front().rows();
  const long n = d.revisions.front().cols();
  if (N < 3) {
    report.push_back(make_violation(Violation::Kind::TooFewSamples,
                                    "revision 0 has " + std::to_string(N) + " samples, need at least 3", 0));
  }
  if (n < 1) {
    report.push_back(make_violation(Violation::Kind::NoDimensions, "revision 0 has no columns", 0));
  }

  for (long t = 0; t < T; ++t) {
    const Matrix& r = d.revisions[t];
    if (r.rows() != N || r.cols() != n) {
      std::ostringstream os;
      os << "revision " << t << " has shape " << r.rows() << "x" << r.cols() << ", expected " << N << "x" << n;
      report.push_back(make_violation(Violation::Kind::ShapeMismatch, os.str(), t));
    }
    for (long i = 0; i < r.rows(); ++i) {
      for (long j = 0; j < r.cols(); ++j) {
        if (!std::isfinite(r(i, j))) {
          std::ostringstream os;
          os << "non-finite value at revision " << t << ", row " << i << ", column " << j;
          report.push_back(make_violation(Violation::Kind::NonFinite, os.str(), t, i, j));
        }
      }
    }
  }

  if (static_cast<long>(d.labels.size()) != N) {
    report.push_back(make_violation(Violation::Kind::LabelCount, "expected " + std::to_string(N) + " labels, got " +
                                                                     std::to_string(d.labels.size())));
  }
  const long num_classes = static_cast<long>(d.class_names.size());
  for (std::size_t i = 0; i < d.labels.size(); ++i) {
    if (d.labels[i] < 0 || d.labels[i] >= num_classes) {
      report.push_back(make_violation(Violation::Kind::LabelRange,
                                      "label " + std::to_string(d.labels[i]) + " of row " + std::to_string(i) +
                                          " does not index one of " + std::to_string(num_classes) + " classes",
                                      -1, static_cast<long>(i)));
    }
  }
  return report;
}

ValidationReport validate_projection(const ProjectionSequence& p, const DynamicDataset& d) {
  ValidationReport report;
  if (p.frames.size() != d.revisions.size()) {
    report.push_back(make_violation(Violation::Kind::ShapeMismatch,
                                    "projection has " + std::to_string(p.frames.size()) + " frames, dataset has " +
                                        std::to_string(d.revisions.size()) + " revisions"));
  }
  const auto N = static_cast<long>(d.num_samples());
  for (std::size_t t = 0; t < p.frames.size(); ++t) {
    const Matrix& f = p.frames[t];
    const auto tl = static_cast<long>(t);
    if (f.rows() != N || f.cols() != 2) {
      std::ostringstream os;
      os << "frame " << t << " has shape " << f.rows() << "x" << f.cols() << ", expected " << N << "x2";
      report.push_back(make_violation(Violation::Kind::ShapeMismatch, os.str(), tl));
    }
    for (long i = 0; i < f.rows(); ++i)
      for (long j = 0; j < f.cols(); ++j)
        if (!std::isfinite(f(i, j))) {
          std::ostringstream os;
          os << "non-finite value at frame " << t << ", row " << i << ", column " << j;
          report.push_back(make_violation(Violation::Kind::NonFinite, os.str(), tl, i, j));
        }
  }
  return report;
}

void require_valid(const DynamicDataset& d) {
  const auto report = validate_dataset(d);
  if (report.empty()) return;
  std::ostringstream os;
  os << "invalid dataset '" << d.name << "': " << report.size() << " violation(s)";
  for (std::size_t i = 0; i < report.size() && i < 5; ++i) os << "; " << report[i].message;
  throw DataError(os.str());
}

Matrix concatenate_revisions(const std::vector<Matrix>& revisions) {
  if (revisions.empty()) return Matrix();
  const Eigen::Index rows = revisions.front().rows();
  Matrix out(rows * static_cast<Eigen::Index>(revisions.size()), revisions.front().cols());
  for (std::size_t t = 0; t < revisions.size(); ++t) {
    out.middleRows(static_cast<Eigen::Index>(t) * rows, rows) = revisions[t];
  }
  return out;
}

DatasetTraits compute_traits(const DynamicDataset& d) {
  require_valid(d);
  DatasetTraits traits;
  traits.num_samples = d.num_samples();
  traits.num_timesteps = d.num_timesteps();
  traits.num_dims = d.num_dims();
  traits.num_classes = d.class_names.size();

  std::size_t zeros = 0;
  for (const Matrix& r : d.revisions) zeros += static_cast<std::size_t>((r.array() == 0.0).count());
  const double total = static_cast<double>(traits.num_samples * traits.num_timesteps * traits.num_dims);
  traits.sparsity_ratio = static_cast<double>(zeros) / total;

  const Matrix all = concatenate_revisions(d.revisions);
  const Eigen::RowVectorXd mean = all.colwise().mean();
  const Matrix centered = all.rowwise() - mean;
  const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(all.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov, Eigen::EigenvaluesOnly);
  // Ascending order from Eigen; clip tiny negative round-off.
  Eigen::VectorXd eig = solver.eigenvalues().cwiseMax(0.0).reverse();
  const double variance = eig.sum();
  if (!(variance > 0.0)) throw DataError("dataset '" + d.name + "' has zero total variance");

  double cumulative = 0.0;
  std::size_t needed = static_cast<std::size_t>(eig.size());
  for (Eigen::Index c = 0; c < eig.size(); ++c) {
    cumulative += eig(c);
    if (cumulative / variance >= 0.95) {
      needed = static_cast<std::size_t>(c) + 1;
      break;
    }
  }
  traits.intrinsic_dim_ratio = static_cast<double>(needed) / static_cast<double>(traits.num_dims);
  return traits;
}

}  // namespace drbench
