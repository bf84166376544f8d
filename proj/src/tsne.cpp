#include "drbench/tsne.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "drbench/neighbors.hpp"

namespace drbench {

namespace {

constexpr double kEntropyTolerance = 1e-5;
constexpr int kBisectionSteps = 50;
constexpr double kMinAffinity = 1e-12;
constexpr double kMinGain = 0.01;

// Writes the exact KL gradient into `grad`; returns the kernel normalizer Z.
double fill_kl_gradient(const Matrix& p, const Matrix& y, double exaggeration, Matrix& grad) {
  const Eigen::Index n = y.rows();
  grad.setZero(n, 2);
  std::vector<double> attr(static_cast<std::size_t>(2 * n), 0.0);
  std::vector<double> rep(static_cast<std::size_t>(2 * n), 0.0);
  const double* Y = y.data();
  double z = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double yi0 = Y[2 * i], yi1 = Y[2 * i + 1];
    const double* prow = p.row(i).data();
    double ai0 = 0, ai1 = 0, ri0 = 0, ri1 = 0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d0 = yi0 - Y[2 * j];
      const double d1 = yi1 - Y[2 * j + 1];
      const double num = 1.0 / (1.0 + d0 * d0 + d1 * d1);
      z += 2.0 * num;
      const double a = prow[j] * num;
      const double r = num * num;
      ai0 += a * d0;
      ai1 += a * d1;
      ri0 += r * d0;
      ri1 += r * d1;
      attr[2 * j] -= a * d0;
      attr[2 * j + 1] -= a * d1;
      rep[2 * j] -= r * d0;
      rep[2 * j + 1] -= r * d1;
    }
    attr[2 * i] += ai0;
    attr[2 * i + 1] += ai1;
    rep[2 * i] += ri0;
    rep[2 * i + 1] += ri1;
  }
  double* G = grad.data();
  for (Eigen::Index c = 0; c < 2 * n; ++c) {
    G[c] = 4.0 * (exaggeration * attr[c] - rep[c] / z);
  }
  return z;
}

// Momentum gradient descent with per-coordinate adaptive gains.
struct DescentState {
  Matrix update;
  Matrix gains;
  explicit DescentState(Eigen::Index n) : update(Matrix::Zero(n, 2)), gains(Matrix::Ones(n, 2)) {}

  void step(Matrix& y, const Matrix& grad, double momentum, double learning_rate) {
    for (Eigen::Index c = 0; c < y.size(); ++c) {
      double& g = gains.data()[c];
      double& u = update.data()[c];
      const double dg = grad.data()[c];
      g = (dg > 0.0) != (u > 0.0) ? g + 0.2 : g * 0.8;
      if (g < kMinGain) g = kMinGain;
      u = momentum * u - learning_rate * g * dg;
      y.data()[c] += u;
    }
    const Eigen::RowVector2d mean = y.colwise().mean();
    y.rowwise() -= mean;
  }
};

Matrix initial_layout(Eigen::Index n, double sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  Matrix y(n, 2);
  for (Eigen::Index c = 0; c < y.size(); ++c) y.data()[c] = normal(rng);
  return y;
}

std::string bisection_warning(std::size_t unconverged, std::size_t total, const char* where) {
  return std::to_string(unconverged) + " of " + std::to_string(total) + " rows" + where +
         " did not reach the perplexity tolerance";
}

}  // namespace

std::size_t ConditionalAffinities::unconverged() const {
  return static_cast<std::size_t>(std::count(converged.begin(), converged.end(), false));
}

ConditionalAffinities conditional_affinities(const Matrix& x, double perplexity) {
  const Eigen::Index n = x.rows();
  Matrix sq = pairwise_distances(x);
  sq = sq.cwiseProduct(sq);

  ConditionalAffinities out;
  out.p = Matrix::Zero(n, n);
  out.entropy.assign(static_cast<std::size_t>(n), 0.0);
  out.converged.assign(static_cast<std::size_t>(n), false);
  const double target = std::log(perplexity);
  std::vector<double> row(static_cast<std::size_t>(n));

  for (Eigen::Index i = 0; i < n; ++i) {
    double dmin = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != i) dmin = std::min(dmin, sq(i, j));

    double beta = 1.0;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    double entropy = 0.0;
    bool done = false;
    for (int step = 0; step < kBisectionSteps; ++step) {
      double sum = 0.0, weighted = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) {
          row[static_cast<std::size_t>(j)] = 0.0;
          continue;
        }
        const double shifted = sq(i, j) - dmin;
        const double v = std::exp(-beta * shifted);
        row[static_cast<std::size_t>(j)] = v;
        sum += v;
        weighted += shifted * v;
      }
      entropy = std::log(sum) + beta * weighted / sum;
      for (double& v : row) v /= sum;
      const double diff = entropy - target;
      if (std::abs(diff) < kEntropyTolerance) {
        done = true;
        break;
      }
      if (diff > 0.0) {
        lo = beta;
        beta = std::isinf(hi) ? beta * 2.0 : 0.5 * (beta + hi);
      } else {
        hi = beta;
        beta = std::isinf(lo) ? beta * 0.5 : 0.5 * (beta + lo);
      }
    }
    for (Eigen::Index j = 0; j < n; ++j) out.p(i, j) = row[static_cast<std::size_t>(j)];
    out.entropy[static_cast<std::size_t>(i)] = entropy;
    out.converged[static_cast<std::size_t>(i)] = done;
  }
  return out;
}

Matrix joint_affinities(const ConditionalAffinities& cond) {
  const Eigen::Index n = cond.p.rows();
  Matrix p = (cond.p + cond.p.transpose()) / (2.0 * static_cast<double>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) p(i, j) = i == j ? 0.0 : std::max(p(i, j), kMinAffinity);
  return p;
}

double kl_divergence(const Matrix& p, const Matrix& y) {
  const Eigen::Index n = y.rows();
  double z = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) z += 2.0 / (1.0 + (y.row(i) - y.row(j)).squaredNorm());
  double kl = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j || p(i, j) <= 0.0) continue;
      const double q = 1.0 / (1.0 + (y.row(i) - y.row(j)).squaredNorm()) / z;
      kl += p(i, j) * std::log(p(i, j) / q);
    }
  }
  return kl;
}

Matrix kl_gradient(const Matrix& p, const Matrix& y, double exaggeration) {
  Matrix grad;
  fill_kl_gradient(p, y, exaggeration, grad);
  return grad;
}

void check_tsne_config(const TSNEConfig& cfg, std::size_t n_points) {
  if (n_points < 5) throw std::invalid_argument("t-SNE needs at least 5 points, got " + std::to_string(n_points));
  const double limit = (static_cast<double>(n_points) - 1.0) / 3.0;
  if (!(cfg.perplexity > 0.0) || !(cfg.perplexity < limit)) {
    throw std::invalid_argument("perplexity " + std::to_string(cfg.perplexity) + " infeasible for " +
                                std::to_string(n_points) + " points (must be in (0, " + std::to_string(limit) + "))");
  }
  if (cfg.iterations < 1) throw std::invalid_argument("t-SNE needs at least one iteration");
  if (!(cfg.learning_rate > 0.0)) throw std::invalid_argument("learning rate must be positive");
  if (!(cfg.init_sigma > 0.0)) throw std::invalid_argument("initial layout sigma must be positive");
  if (cfg.early_exaggeration < 1.0) throw std::invalid_argument("early exaggeration must be >= 1");
}

TSNEResult tsne(const Matrix& x, const TSNEConfig& cfg) {
  const auto n = static_cast<std::size_t>(x.rows());
  check_tsne_config(cfg, n);
  TSNEResult result;
  const ConditionalAffinities cond = conditional_affinities(x, cfg.perplexity);
  if (const auto bad = cond.unconverged()) result.warnings.push_back(bisection_warning(bad, n, ""));
  const Matrix p = joint_affinities(cond);

  Matrix y = initial_layout(x.rows(), cfg.init_sigma, cfg.seed);
  DescentState state(x.rows());
  Matrix grad;
  bool recorded = false;
  for (int iter = 0; iter < cfg.iterations; ++iter) {
    const bool exaggerate = iter < cfg.exaggeration_iterations;
    fill_kl_gradient(p, y, exaggerate ? cfg.early_exaggeration : 1.0, grad);
    const double momentum = iter < cfg.momentum_switch_iteration ? cfg.initial_momentum : cfg.final_momentum;
    state.step(y, grad, momentum, cfg.learning_rate);
    if (iter + 1 == cfg.exaggeration_iterations) {
      result.kl_after_exaggeration = kl_divergence(p, y);
      recorded = true;
    }
  }
  result.kl_final = kl_divergence(p, y);
  if (!recorded) result.kl_after_exaggeration = result.kl_final;
  result.embedding = std::move(y);
  return result;
}

double movement_penalty(const std::vector<Matrix>& frames, double lambda) {
  if (frames.size() < 2) return 0.0;
  const double n = static_cast<double>(frames.front().rows());
  const double scale = lambda / (2.0 * n * static_cast<double>(frames.size() - 1));
  double sum = 0.0;
  for (std::size_t t = 0; t + 1 < frames.size(); ++t) sum += (frames[t + 1] - frames[t]).squaredNorm();
  return scale * sum;
}

std::vector<Matrix> movement_penalty_gradient(const std::vector<Matrix>& frames, double lambda) {
  std::vector<Matrix> grads;
  grads.reserve(frames.size());
  for (const Matrix& f : frames) grads.push_back(Matrix::Zero(f.rows(), f.cols()));
  if (frames.size() < 2) return grads;
  const double n = static_cast<double>(frames.front().rows());
  const double scale = lambda / (n * static_cast<double>(frames.size() - 1));
  for (std::size_t t = 0; t + 1 < frames.size(); ++t) {
    const Matrix diff = frames[t + 1] - frames[t];
    grads[t + 1] += scale * diff;
    grads[t] -= scale * diff;
  }
  return grads;
}

DTSNEResult dtsne(const DynamicDataset& d, const DTSNEConfig& cfg) {
  require_valid(d);
  if (!(cfg.lambda >= 0.0)) throw std::invalid_argument("dt-SNE lambda must be non-negative");
  const std::size_t T = d.num_timesteps();
  const std::size_t n = d.num_samples();
  const TSNEConfig& base = cfg.base;
  check_tsne_config(base, n);

  DTSNEResult result;
  std::vector<Matrix> p;
  p.reserve(T);
  for (std::size_t t = 0; t < T; ++t) {
    const ConditionalAffinities cond = conditional_affinities(d.revisions[t], base.perplexity);
    if (const auto bad = cond.unconverged()) {
      result.warnings.push_back(bisection_warning(bad, n, (" of revision " + std::to_string(t)).c_str()));
    }
    p.push_back(joint_affinities(cond));
  }

  const auto rows = static_cast<Eigen::Index>(n);
  const Matrix init = initial_layout(rows, base.init_sigma, base.seed);
  std::vector<Matrix> frames(T, init);
  std::vector<DescentState> states(T, DescentState(rows));
  std::vector<Matrix> grads(T);

  for (int iter = 0; iter < base.iterations; ++iter) {
    const double exaggeration = iter < base.exaggeration_iterations ? base.early_exaggeration : 1.0;
    const double momentum = iter < base.momentum_switch_iteration ? base.initial_momentum : base.final_momentum;
    for (std::size_t t = 0; t < T; ++t) fill_kl_gradient(p[t], frames[t], exaggeration, grads[t]);
    if (cfg.lambda > 0.0) {
      const auto penalty = movement_penalty_gradient(frames, cfg.lambda);
      for (std::size_t t = 0; t < T; ++t) grads[t] += penalty[t];
    }
    for (std::size_t t = 0; t < T; ++t) states[t].step(frames[t], grads[t], momentum, base.learning_rate);
  }

  result.kl_final.reserve(T);
  for (std::size_t t = 0; t < T; ++t) result.kl_final.push_back(kl_divergence(p[t], frames[t]));
  result.penalty_final = movement_penalty(frames, cfg.lambda);
  result.projection.dataset_name = d.name;
  result.projection.technique = "dt-SNE";
  result.projection.frames = std::move(frames);
  return result;
}

}  // namespace drbench
