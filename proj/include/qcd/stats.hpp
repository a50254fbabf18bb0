#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qcd {

// Reductions used for every ensemble statistic. All of them are sequential
// over a fixed ordering, so results never depend on how the inputs were
// produced (thread count, schedule).

/// Pairwise (cascade) summation; error grows as O(log n) instead of O(n).
double pairwise_sum(std::span<const double> values);

struct MeanSE {
    double mean = 0.0;
    double se = 0.0;  // standard error of the mean (sample sd / sqrt(n))
};

MeanSE mean_se(std::span<const double> values);

/// Root mean square.
double rms(std::span<const double> values);

double median(std::vector<double> values);

/// Linear-interpolated empirical quantile, q in [0, 1].
double quantile(std::vector<double> values, double q);

/// Pearson correlation of two equally long samples.
double correlation(std::span<const double> x, std::span<const double> y);

}  // namespace qcd
