#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drbench/core_model.hpp"

namespace drbench {

/// Exact-gradient t-SNE settings. Defaults are the customary literature values.
struct TSNEConfig {
  double perplexity = 30.0;
  int iterations = 1000;
  double learning_rate = 200.0;
  double initial_momentum = 0.5;
  double final_momentum = 0.8;
  int momentum_switch_iteration = 250;
  double early_exaggeration = 12.0;
  int exaggeration_iterations = 250;
  double init_sigma = 1e-4;
  std::uint64_t seed = 0;
};

/// dt-SNE: t-SNE over all frames jointly plus
/// lambda / (2 N (T-1)) * sum_{i,t} |y_i^{t+1} - y_i^t|^2.
struct DTSNEConfig {
  TSNEConfig base;
  double lambda = 0.1;
};

/// Row-stochastic conditional affinities p_{j|i} calibrated to a perplexity.
struct ConditionalAffinities {
  Matrix p;                       // N x N, zero diagonal, rows sum to 1
  std::vector<double> entropy;    // natural-log Shannon entropy per row
  std::vector<bool> converged;    // bisection reached the 1e-5 tolerance
  std::size_t unconverged() const;
};

/// Gaussian bandwidth per row found by bisection on the precision, matching
/// the entropy to log(perplexity) within 1e-5 in at most 50 steps.
ConditionalAffinities conditional_affinities(const Matrix& x, double perplexity);

/// Symmetrized joint affinities (p_{j|i} + p_{i|j}) / 2N, floored at 1e-12.
Matrix joint_affinities(const ConditionalAffinities& cond);

/// KL(P || Q) for a layout `y` under the Student-t kernel.
double kl_divergence(const Matrix& p, const Matrix& y);

/// Exact gradient of KL(exaggeration * P || Q) with respect to `y`.
Matrix kl_gradient(const Matrix& p, const Matrix& y, double exaggeration = 1.0);

/// Throws std::invalid_argument unless N >= 5, perplexity < (N-1)/3 and
/// the schedule is positive.
void check_tsne_config(const TSNEConfig& cfg, std::size_t n_points);

struct TSNEResult {
  Matrix embedding;                 // N x 2
  double kl_after_exaggeration = 0; // KL against the plain P when exaggeration ends
  double kl_final = 0;
  std::vector<std::string> warnings;
};

TSNEResult tsne(const Matrix& x, const TSNEConfig& cfg);

/// lambda / (2 N (T-1)) * sum of squared consecutive-frame displacements.
double movement_penalty(const std::vector<Matrix>& frames, double lambda);
std::vector<Matrix> movement_penalty_gradient(const std::vector<Matrix>& frames, double lambda);

struct DTSNEResult {
  ProjectionSequence projection;
  std::vector<double> kl_final;  // per frame
  double penalty_final = 0;
  std::vector<std::string> warnings;
};

/// Joint optimization of all frames from one shared seeded initial layout.
DTSNEResult dtsne(const DynamicDataset& d, const DTSNEConfig& cfg);

}  // namespace drbench
