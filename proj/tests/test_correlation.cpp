#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "drbench/correlation.hpp"
#include "drbench/core_model.hpp"
#include "oracles.hpp"

using namespace drbench;

namespace {

constexpr CorrelationKind kAll[] = {CorrelationKind::Pearson, CorrelationKind::Spearman, CorrelationKind::Kendall};

}  // namespace

TEST_CASE("identical and reversed sequences") {
  const std::vector<double> a{1, 2, 3}, rev{3, 2, 1};
  for (auto kind : kAll) {
    CHECK(correlation(a, a, kind) == doctest::Approx(1.0));
    CHECK(correlation(a, rev, kind) == doctest::Approx(-1.0));
  }
}

TEST_CASE("one discordant pair of three") {
  const std::vector<double> a{1, 2, 3}, b{1, 3, 2};
  CHECK(kendall_tau_b(a, b) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("average ranks share ties") {
  const std::vector<double> v{10, 20, 10, 30, 20, 20};
  CHECK(average_ranks(v) == std::vector<double>{1.5, 4, 1.5, 6, 4, 4});
}

TEST_CASE("degenerate inputs") {
  const std::vector<double> a{1, 2, 3}, flat{2, 2, 2};
  for (auto kind : kAll) {
    CHECK_THROWS_AS(correlation(flat, a, kind), DataError);
    CHECK_THROWS_AS(correlation(a, flat, kind), DataError);
  }
  try {
    pearson(a, flat);
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("second") != std::string::npos);
  }
  const std::vector<double> one{1};
  CHECK_THROWS_AS(pearson(one, one), std::invalid_argument);
  const std::vector<double> two{1, 2};
  CHECK_THROWS_AS(spearman(a, two), std::invalid_argument);
}

TEST_CASE("fast Kendall equals the pair-count oracle exactly, ties included") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t P = 2 + rng() % 2000;
    const int levels = trial % 2 ? 5 : 1 << 30;
    std::uniform_int_distribution<int> u(0, levels);
    std::vector<double> a(P), b(P);
    for (std::size_t i = 0; i < P; ++i) {
      a[i] = u(rng);
      b[i] = u(rng) + 0.1 * a[i];
    }
    if (std::equal(a.begin() + 1, a.end(), a.begin()) || std::equal(b.begin() + 1, b.end(), b.begin())) continue;
    CHECK(kendall_tau_b(a, b) == oracle::kendall_tau_b(a, b));
  }
}

TEST_CASE("Pearson and Spearman agree with two-pass oracles") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> a(200), b(200);
    for (std::size_t i = 0; i < 200; ++i) {
      a[i] = std::round(4 * g(rng));
      b[i] = a[i] + 3 * g(rng);
    }
    CHECK(pearson(a, b) == doctest::Approx(oracle::pearson(a, b)).epsilon(1e-12));
    CHECK(spearman(a, b) == doctest::Approx(oracle::spearman(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("rank correlations ignore monotone transforms, Pearson ignores affine ones") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(100), b(100), a_mono(100), a_affine(100);
    for (std::size_t i = 0; i < 100; ++i) {
      a[i] = g(rng);
      b[i] = a[i] + g(rng);
      a_mono[i] = std::exp(3 * a[i]) + a[i] * a[i] * a[i];
      a_affine[i] = 4.0 * a[i] - 7.0;
    }
    CHECK(spearman(a_mono, b) == doctest::Approx(spearman(a, b)).epsilon(1e-12));
    CHECK(kendall_tau_b(a_mono, b) == kendall_tau_b(a, b));
    CHECK(pearson(a_affine, b) == doctest::Approx(pearson(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("correlations stay in [-1, 1]") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(20), b(20);
    for (std::size_t i = 0; i < 20; ++i) {
      a[i] = g(rng);
      b[i] = g(rng);
    }
    for (auto kind : kAll) {
      const double r = correlation(a, b, kind);
      CHECK(r >= -1.0);
      CHECK(r <= 1.0);
    }
  }
}
