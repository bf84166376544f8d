#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace drbench {

enum class CorrelationKind { Pearson, Spearman, Kendall };

std::string_view to_string(CorrelationKind kind);

/// 1-based ranks; tied values share the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

double pearson(std::span<const double> a, std::span<const double> b);
double spearman(std::span<const double> a, std::span<const double> b);

/// Kendall tau-b (tie corrected), O(P log P) by merge-sort inversion counting.
double kendall_tau_b(std::span<const double> a, std::span<const double> b);

/// Dispatches on `kind`. Requires at least two pairs of equal length. Throws
/// DataError naming the side ("first"/"second") that has zero variance.
double correlation(std::span<const double> a, std::span<const double> b, CorrelationKind kind);

}  // namespace drbench
