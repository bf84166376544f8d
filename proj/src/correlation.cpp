#include "drbench/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "drbench/core_model.hpp"

namespace drbench {

std::string_view to_string(CorrelationKind kind) {
  switch (kind) {
    case CorrelationKind::Pearson: return "pearson";
    case CorrelationKind::Spearman: return "spearman";
    case CorrelationKind::Kendall: return "kendall";
  }
  return "?";
}

namespace {

void check_pairs(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("correlation inputs differ in length (" + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
  if (a.size() < 2) throw std::invalid_argument("correlation needs at least 2 pairs");
}

[[noreturn]] void degenerate(const char* side) {
  throw DataError(std::string("correlation undefined: ") + side + " variable has zero variance");
}

// Number of tied pairs, sum over runs of equal values of m(m-1)/2. Input sorted.
template <typename Eq>
std::int64_t tied_pairs(std::size_t n, Eq equal) {
  std::int64_t ties = 0;
  std::size_t run = 1;
  for (std::size_t i = 1; i < n; ++i) {
    if (equal(i - 1, i)) {
      ++run;
    } else {
      ties += static_cast<std::int64_t>(run) * static_cast<std::int64_t>(run - 1) / 2;
      run = 1;
    }
  }
  ties += static_cast<std::int64_t>(run) * static_cast<std::int64_t>(run - 1) / 2;
  return ties;
}

// Sorts v ascending, returning the number of swaps an exchange sort would need.
std::int64_t merge_count(std::vector<double>& v, std::vector<double>& buf, std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t swaps = merge_count(v, buf, lo, mid) + merge_count(v, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += static_cast<std::int64_t>(mid - i);
      buf[k++] = v[j++];
    } else {
      buf[k++] = v[i++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

}  // namespace

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[idx[j]] == values[idx[i]]) ++j;
    // Positions i..j-1 (0-based) hold equal values; mean 1-based rank.
    const double r = 0.5 * static_cast<double>(i + j + 1);
    for (std::size_t m = i; m < j; ++m) ranks[idx[m]] = r;
    i = j;
  }
  return ranks;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  check_pairs(a, b);
  // A constant vector can still leave rounding residue around its mean.
  auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
  };
  if (constant(a)) degenerate("first");
  if (constant(b)) degenerate("second");
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (!(saa > 0.0)) degenerate("first");
  if (!(sbb > 0.0)) degenerate("second");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

double spearman(std::span<const double> a, std::span<const double> b) {
  check_pairs(a, b);
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  return pearson(ra, rb);
}

double kendall_tau_b(std::span<const double> a, std::span<const double> b) {
  check_pairs(a, b);
  const std::size_t n = a.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    return a[x] < a[y] || (a[x] == a[y] && b[x] < b[y]);
  });

  const std::int64_t total = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
  const std::int64_t ties_a = tied_pairs(n, [&](std::size_t p, std::size_t q) { return a[idx[p]] == a[idx[q]]; });
  const std::int64_t ties_ab = tied_pairs(
      n, [&](std::size_t p, std::size_t q) { return a[idx[p]] == a[idx[q]] && b[idx[p]] == b[idx[q]]; });

  std::vector<double> sorted_b(n);
  for (std::size_t p = 0; p < n; ++p) sorted_b[p] = b[idx[p]];
  std::vector<double> buf(n);
  const std::int64_t swaps = merge_count(sorted_b, buf, 0, n);
  const std::int64_t ties_b = tied_pairs(n, [&](std::size_t p, std::size_t q) { return sorted_b[p] == sorted_b[q]; });

  const std::int64_t untied_a = total - ties_a;
  const std::int64_t untied_b = total - ties_b;
  if (untied_a == 0) degenerate("first");
  if (untied_b == 0) degenerate("second");
  // concordant - discordant
  const std::int64_t score = total - ties_a - ties_b + ties_ab - 2 * swaps;
  const double denom = std::sqrt(static_cast<double>(untied_a) * static_cast<double>(untied_b));
  return std::clamp(static_cast<double>(score) / denom, -1.0, 1.0);
}

double correlation(std::span<const double> a, std::span<const double> b, CorrelationKind kind) {
  switch (kind) {
    case CorrelationKind::Pearson: return pearson(a, b);
    case CorrelationKind::Spearman: return spearman(a, b);
    case CorrelationKind::Kendall: return kendall_tau_b(a, b);
  }
  throw std::invalid_argument("unknown correlation kind");
}

}  // namespace drbench
