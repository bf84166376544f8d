#include <doctest.h>

#include <numeric>
#include <random>

#include "drbench/spatial_quality.hpp"
#include "oracles.hpp"

using namespace drbench;

namespace {

Matrix line(std::initializer_list<double> xs) {
  Matrix m(static_cast<Eigen::Index>(xs.size()), 1);
  Eigen::Index i = 0;
  for (double x : xs) m(i++, 0) = x;
  return m;
}

}  // namespace

TEST_CASE("four-point fixture") {
  const DistanceRankCache data(line({0, 1, 2.2, 4})), proj(line({0, 1, 4, 2.2}));
  CHECK(neighborhood_preservation(data, proj, 1) == 0.5);
  CHECK(trustworthiness(data, proj, 1) == 0.75);
  CHECK(continuity(data, proj, 1) == 0.75);
}

TEST_CASE("neighborhood hit examples") {
  SUBCASE("alternating labels on a line") {
    const DistanceRankCache proj(line({0, 1, 2, 3}));
    const std::vector<int> labels{0, 1, 0, 1};
    CHECK(neighborhood_hit(proj, labels, 1) == 0.0);
  }
  SUBCASE("two separated clusters") {
    std::mt19937_64 rng(1);
    Matrix y = oracle::random_matrix(20, 2, rng, 0.1);
    std::vector<int> labels(20, 0);
    for (Eigen::Index i = 10; i < 20; ++i) {
      y(i, 0) += 100.0;
      labels[i] = 1;
    }
    CHECK(neighborhood_hit(DistanceRankCache(y), labels, 3) == 1.0);
    CHECK(neighborhood_hit(DistanceRankCache(y), std::vector<int>(20, 4), 3) == 1.0);
  }
  SUBCASE("label count mismatch") {
    const DistanceRankCache proj(line({0, 1, 2, 3}));
    CHECK_THROWS_AS(neighborhood_hit(proj, std::vector<int>{0, 1}, 1), std::invalid_argument);
  }
}

TEST_CASE("full neighborhoods always match") {
  std::mt19937_64 rng(2);
  const DistanceRankCache a(oracle::random_matrix(12, 5, rng)), b(oracle::random_matrix(12, 2, rng));
  CHECK(neighborhood_preservation(a, b, 11) == 1.0);
}

TEST_CASE("range and size checks") {
  std::mt19937_64 rng(3);
  const DistanceRankCache a(oracle::random_matrix(10, 3, rng)), b(oracle::random_matrix(10, 2, rng));
  const DistanceRankCache c(oracle::random_matrix(9, 2, rng));
  CHECK_THROWS_AS(neighborhood_preservation(a, c, 2), std::invalid_argument);
  CHECK_THROWS_AS(neighborhood_preservation(a, b, 0), std::invalid_argument);
  CHECK_THROWS_AS(trustworthiness(a, b, 5), std::invalid_argument);
  CHECK_NOTHROW(trustworthiness(a, b, 4));
  CHECK_THROWS_AS(continuity(a, c, 2), std::invalid_argument);
}

TEST_CASE("neighborhood metrics match brute force on random instances") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix x = oracle::random_matrix(50, 8, rng), y = oracle::random_matrix(50, 2, rng);
    const auto dx = oracle::distances(oracle::to_rows(x)), dy = oracle::distances(oracle::to_rows(y));
    const DistanceRankCache cx(x), cy(y);
    std::vector<int> labels(50);
    for (auto& l : labels) l = static_cast<int>(rng() % 3);
    for (std::size_t k : {1, 5, 12, 24}) {
      CHECK(trustworthiness(cx, cy, k) == doctest::Approx(oracle::trustworthiness(dx, dy, k)).epsilon(1e-12));
      CHECK(continuity(cx, cy, k) == doctest::Approx(oracle::continuity(dx, dy, k)).epsilon(1e-12));
      CHECK(neighborhood_preservation(cx, cy, k) == doctest::Approx(oracle::neighborhood_preservation(dx, dy, k)).epsilon(1e-12));
      CHECK(neighborhood_hit(cy, labels, k) == doctest::Approx(oracle::neighborhood_hit(dy, labels, k)).epsilon(1e-12));
    }
  }
}

TEST_CASE("neighborhood metrics are bounded and swap under exchange") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t N = 8 + rng() % 40;
    const DistanceRankCache a(oracle::random_matrix(N, 4, rng)), b(oracle::random_matrix(N, 2, rng));
    std::vector<int> labels(N);
    for (auto& l : labels) l = static_cast<int>(rng() % 4);
    for (std::size_t k = 1; 2 * k < N; k += 2) {
      for (double v : {neighborhood_preservation(a, b, k), neighborhood_hit(b, labels, k), trustworthiness(a, b, k),
                       continuity(a, b, k)}) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
      CHECK(trustworthiness(a, b, k) == continuity(b, a, k));
      CHECK(continuity(a, b, k) == trustworthiness(b, a, k));
    }
  }
}

TEST_CASE("neighborhood metrics ignore rigid motion and scaling") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix x = oracle::random_matrix(40, 6, rng), y = oracle::random_matrix(40, 2, rng);
    const Matrix y2 = oracle::rigid_scale(y, rng);
    const DistanceRankCache cx(x), cy(y), cy2(y2);
    for (std::size_t k : {1, 4, 8}) {
      CHECK(trustworthiness(cx, cy, k) == doctest::Approx(trustworthiness(cx, cy2, k)).epsilon(1e-12));
      CHECK(continuity(cx, cy, k) == doctest::Approx(continuity(cx, cy2, k)).epsilon(1e-12));
      CHECK(neighborhood_preservation(cx, cy, k) == doctest::Approx(neighborhood_preservation(cx, cy2, k)).epsilon(1e-12));
    }
  }
}

TEST_CASE("sweep k values") {
  const auto np = sweep_k_values(100, default_sweep(NeighborhoodMetric::Preservation));
  REQUIRE(np.size() == 20);
  CHECK(np.front() == 1);
  CHECK(np.back() == 20);
  const auto nh = sweep_k_values(400, default_sweep(NeighborhoodMetric::Hit));
  CHECK(nh.front() == 1);
  CHECK(nh.back() == 20);
  // Small N collapses duplicates but keeps order.
  const auto small = sweep_k_values(20, default_sweep(NeighborhoodMetric::Preservation));
  CHECK(std::is_sorted(small.begin(), small.end()));
  CHECK(std::adjacent_find(small.begin(), small.end()) == small.end());
  CHECK(small.front() == 1);
  CHECK(small.back() == 4);
}

TEST_CASE("identity sweep is flat at one") {
  std::mt19937_64 rng(7);
  const Matrix y = oracle::random_matrix(100, 2, rng);
  const DistanceRankCache c(y);
  const std::vector<int> labels(100, 0);
  for (auto metric : {NeighborhoodMetric::Preservation, NeighborhoodMetric::Hit, NeighborhoodMetric::Trustworthiness,
                      NeighborhoodMetric::Continuity}) {
    const MetricCurve curve = multiscale_sweep(metric, c, c, labels);
    CHECK(curve.k_values.size() == curve.scores.size());
    for (double s : curve.scores) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(curve.aggregate == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("curve aggregate is the mean of its scores") {
  std::mt19937_64 rng(8);
  const DistanceRankCache a(oracle::random_matrix(60, 5, rng)), b(oracle::random_matrix(60, 2, rng));
  const MetricCurve curve = multiscale_sweep(NeighborhoodMetric::Trustworthiness, a, b);
  const double mean = std::accumulate(curve.scores.begin(), curve.scores.end(), 0.0) / static_cast<double>(curve.scores.size());
  CHECK(curve.aggregate == doctest::Approx(mean).epsilon(1e-14));
}

TEST_CASE("shepard pairs") {
  std::mt19937_64 rng(9);
  const Matrix y = oracle::random_matrix(4, 2, rng);
  const ShepardPoints same = shepard_points(y, y);
  CHECK(same.size() == 6);
  for (std::size_t i = 0; i < same.size(); ++i) CHECK(same.d[i] == same.dbar[i]);
  const ShepardPoints doubled = shepard_points(y, Matrix(2.0 * y));
  for (std::size_t i = 0; i < doubled.size(); ++i) CHECK(doubled.dbar[i] == doctest::Approx(2.0 * doubled.d[i]));
  // Row-major over i < j: the third pair is (0, 3).
  CHECK(same.d[2] == doctest::Approx((y.row(0) - y.row(3)).norm()));
  CHECK_THROWS_AS(shepard_points(y, Matrix(y.topRows(3))), std::invalid_argument);
}

TEST_CASE("stress examples") {
  std::mt19937_64 rng(10);
  const Matrix x = oracle::random_matrix(30, 5, rng), y = oracle::random_matrix(30, 2, rng);
  const ShepardPoints sp = shepard_points(x, y);
  CHECK(normalized_stress(shepard_points(x, x)) == doctest::Approx(0.0));
  CHECK(normalized_stress(shepard_points(x, Matrix(3.0 * x))) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(normalized_stress(sp) == doctest::Approx(oracle::stress(sp.d, sp.dbar)).epsilon(1e-10));
  CHECK(normalized_stress(sp) >= 0.0);

  // Flat d is an error, flat dbar is not.
  const std::vector<double> flat(6, 1.0), varied{1, 2, 3, 4, 5, 6};
  CHECK_THROWS_AS(standardized_stress(flat, varied), DataError);
  CHECK(std::isfinite(standardized_stress(varied, flat)));
}

TEST_CASE("rms scaling keeps the mean") {
  const std::vector<double> d{1, 2, 3, 4}, shifted{11, 12, 13, 14};
  CHECK(standardized_stress(d, shifted) == doctest::Approx(0.0));
  CHECK(standardized_stress(d, shifted, StressScaling::Rms) > 0.0);
  const std::vector<double> scaled{2, 4, 6, 8};
  CHECK(standardized_stress(d, scaled, StressScaling::Rms) == doctest::Approx(0.0));
}

TEST_CASE("rank difference histogram") {
  std::vector<double> a(10), same(10), reversed(10);
  for (int i = 0; i < 10; ++i) {
    a[i] = i;
    same[i] = 2 * i + 1;
    reversed[i] = -i;
  }
  const auto mono = rank_difference_histogram(a, same, 5);
  REQUIRE(mono.size() == 5);
  CHECK(mono[0].frequency == 1.0);
  CHECK(mono[0].low == 0.0);
  CHECK(mono.back().high == 9.0);

  // Differences |2i - 9| = 9,7,5,3,1,1,3,5,7,9 over ten bins of width 0.9.
  const auto rev = rank_difference_histogram(a, reversed, 10);
  CHECK(rev[0].frequency == 0.0);
  for (std::size_t b : {1, 3, 5, 7, 9}) CHECK(rev[b].frequency == doctest::Approx(0.2));
  for (std::size_t b : {2, 4, 6, 8}) CHECK(rev[b].frequency == 0.0);
  double total = 0;
  for (const auto& b : rev) total += b.frequency;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS(rank_difference_histogram(a, same, 0));
}
