#include <doctest.h>

#include <cmath>
#include <random>

#include "drbench/neighbors.hpp"
#include "drbench/spatial_quality.hpp"
#include "drbench/tsne.hpp"
#include "oracles.hpp"

using namespace drbench;

namespace {

// Two 10D blobs of 30 points, 20 units apart.
Matrix two_blobs(std::uint64_t seed, std::vector<int>* labels = nullptr) {
  std::mt19937_64 rng(seed);
  Matrix x = oracle::random_matrix(60, 10, rng);
  for (Eigen::Index i = 30; i < 60; ++i) x(i, 0) += 20.0;
  if (labels) {
    labels->assign(60, 0);
    std::fill(labels->begin() + 30, labels->end(), 1);
  }
  return x;
}

TSNEConfig small_config(std::uint64_t seed) {
  TSNEConfig cfg;
  cfg.perplexity = 10.0;
  cfg.seed = seed;
  return cfg;
}

double numeric_kl_gradient(const Matrix& p, Matrix y, Eigen::Index i, Eigen::Index c) {
  const double h = 1e-6;
  y(i, c) += h;
  const double up = kl_divergence(p, y);
  y(i, c) -= 2 * h;
  const double down = kl_divergence(p, y);
  return (up - down) / (2 * h);
}

}  // namespace

TEST_CASE("bisection hits the target perplexity") {
  std::mt19937_64 rng(1);
  const Matrix x = oracle::random_matrix(80, 6, rng);
  for (double perplexity : {5.0, 15.0, 25.0}) {
    const ConditionalAffinities cond = conditional_affinities(x, perplexity);
    CHECK(cond.unconverged() == 0);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      CHECK(cond.p(i, i) == 0.0);
      CHECK(cond.p.row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));
      // Perplexity recomputed independently from the row.
      double h = 0;
      for (Eigen::Index j = 0; j < x.rows(); ++j)
        if (cond.p(i, j) > 0) h -= cond.p(i, j) * std::log(cond.p(i, j));
      CHECK(std::abs(std::exp(h) - perplexity) < 1e-3);
    }
  }
}

TEST_CASE("joint affinities are symmetric and sum to one") {
  std::mt19937_64 rng(2);
  const Matrix p = joint_affinities(conditional_affinities(oracle::random_matrix(40, 4, rng), 8.0));
  CHECK((p - p.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(p.diagonal().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("KL gradient matches finite differences") {
  std::mt19937_64 rng(3);
  const Matrix p = joint_affinities(conditional_affinities(oracle::random_matrix(20, 5, rng), 4.0));
  const Matrix y = oracle::random_matrix(20, 2, rng);
  const Matrix g = kl_gradient(p, y);
  for (Eigen::Index i = 0; i < 20; i += 3)
    for (Eigen::Index c = 0; c < 2; ++c)
      CHECK(g(i, c) == doctest::Approx(numeric_kl_gradient(p, y, i, c)).epsilon(1e-5));
  // Exaggeration scales only the attractive part; the gradient changes.
  CHECK((kl_gradient(p, y, 4.0) - g).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("configuration checks") {
  TSNEConfig cfg;
  CHECK_THROWS_AS(check_tsne_config(cfg, 4), std::invalid_argument);
  CHECK_THROWS_AS(check_tsne_config(cfg, 91), std::invalid_argument);
  CHECK_NOTHROW(check_tsne_config(cfg, 92));
  cfg.iterations = 0;
  CHECK_THROWS_AS(check_tsne_config(cfg, 500), std::invalid_argument);
}

TEST_CASE("same seed gives bitwise identical layouts") {
  const Matrix x = two_blobs(4);
  TSNEConfig cfg = small_config(17);
  cfg.iterations = 300;
  const Matrix a = tsne(x, cfg).embedding, b = tsne(x, cfg).embedding;
  CHECK(a == b);
  cfg.seed = 18;
  CHECK(tsne(x, cfg).embedding != a);
}

TEST_CASE("KL does not rise after early exaggeration") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const TSNEResult r = tsne(two_blobs(10 + seed), small_config(seed));
    CHECK(r.kl_final <= 1.05 * r.kl_after_exaggeration);
    CHECK(r.warnings.empty());
  }
}

TEST_CASE("two blobs stay apart") {
  double total = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::vector<int> labels;
    const Matrix x = two_blobs(20 + seed, &labels);
    const TSNEResult r = tsne(x, small_config(seed));
    CHECK(r.embedding.rows() == 60);
    CHECK(r.embedding.cols() == 2);
    total += neighborhood_hit(DistanceRankCache(r.embedding), labels, 5);
  }
  CHECK(total / 5.0 >= 0.9);
}

TEST_CASE("movement penalty and its gradient") {
  std::mt19937_64 rng(5);
  std::vector<Matrix> frames;
  for (int t = 0; t < 4; ++t) frames.push_back(oracle::random_matrix(7, 2, rng));

  for (const auto& g : movement_penalty_gradient(frames, 0.0)) CHECK(g.cwiseAbs().maxCoeff() == 0.0);
  CHECK(movement_penalty(frames, 0.0) == 0.0);

  double sum = 0;
  for (int t = 0; t < 3; ++t) sum += (frames[t + 1] - frames[t]).squaredNorm();
  CHECK(movement_penalty(frames, 0.3) == doctest::Approx(0.3 / (2 * 7 * 3) * sum));

  const auto grads = movement_penalty_gradient(frames, 0.3);
  const double h = 1e-6;
  for (int t = 0; t < 4; ++t)
    for (Eigen::Index i = 0; i < 7; i += 2) {
      auto up = frames, down = frames;
      up[t](i, 1) += h;
      down[t](i, 1) -= h;
      const double numeric = (movement_penalty(up, 0.3) - movement_penalty(down, 0.3)) / (2 * h);
      CHECK(grads[t](i, 1) == doctest::Approx(numeric).epsilon(1e-6));
    }
}

TEST_CASE("dt-SNE is deterministic and starts all frames together") {
  DynamicDataset d;
  d.class_names = {"a", "b"};
  std::vector<int> labels;
  const Matrix base = two_blobs(30, &labels);
  d.labels = labels;
  std::mt19937_64 rng(6);
  for (int t = 0; t < 3; ++t) d.revisions.push_back(base + oracle::random_matrix(60, 10, rng, 0.3));

  DTSNEConfig cfg;
  cfg.base = small_config(3);
  cfg.base.iterations = 200;
  const DTSNEResult a = dtsne(d, cfg), b = dtsne(d, cfg);
  REQUIRE(a.projection.frames.size() == 3);
  for (int t = 0; t < 3; ++t) CHECK(a.projection.frames[t] == b.projection.frames[t]);
  CHECK(a.kl_final.size() == 3);
  CHECK(a.penalty_final == doctest::Approx(movement_penalty(a.projection.frames, 0.1)));

  cfg.lambda = -1.0;
  CHECK_THROWS_AS(dtsne(d, cfg), std::invalid_argument);
}

TEST_CASE("dt-SNE on static data with a heavy penalty barely moves") {
  DynamicDataset d;
  d.class_names = {"a", "b"};
  std::vector<int> labels;
  const Matrix base = two_blobs(40, &labels);
  d.labels = labels;
  d.revisions.assign(4, base);
  DTSNEConfig cfg;
  cfg.base = small_config(1);
  cfg.lambda = 100.0;
  const DTSNEResult r = dtsne(d, cfg);
  double total = 0;
  for (int t = 0; t < 3; ++t)
    total += (r.projection.frames[t + 1] - r.projection.frames[t]).rowwise().norm().sum();
  CHECK(total / (3 * 60) < 1e-3);
}
