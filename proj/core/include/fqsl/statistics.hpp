#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fqsl::stats {

/// 1-based ranks with ties sharing their average rank.
std::vector<double> average_ranks(std::span<const double> values);

double pearson(std::span<const double> a, std::span<const double> b);

/// Pearson correlation of the average ranks. Throws InvalidInput for
/// mismatched or too short inputs.
double spearman(std::span<const double> a, std::span<const double> b);

/// Counts over `bins` equal-width bins on [lo, hi]; values outside are dropped.
std::vector<std::size_t> histogram(std::span<const double> values, double lo, double hi, std::size_t bins);

}  // namespace fqsl::stats
