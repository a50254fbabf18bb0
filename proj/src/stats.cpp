#include "qcd/stats.hpp"

#include <algorithm>
#include <cmath>

#include "qcd/errors.hpp"

namespace qcd {

double pairwise_sum(std::span<const double> values) {
    constexpr std::size_t kLeaf = 16;
    if (values.size() <= kLeaf) {
        double sum = 0.0;
        for (double v : values) {
            sum += v;
        }
        return sum;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

MeanSE mean_se(std::span<const double> values) {
    if (values.empty()) {
        throw InvalidArgument("mean_se: empty sample");
    }
    const double n = static_cast<double>(values.size());
    const double mean = pairwise_sum(values) / n;
    if (values.size() == 1) {
        return {mean, 0.0};
    }
    std::vector<double> sq(values.size());
    std::transform(values.begin(), values.end(), sq.begin(),
                   [mean](double v) { return (v - mean) * (v - mean); });
    const double var = pairwise_sum(sq) / (n - 1.0);
    return {mean, std::sqrt(var / n)};
}

double rms(std::span<const double> values) {
    if (values.empty()) {
        throw InvalidArgument("rms: empty sample");
    }
    std::vector<double> sq(values.size());
    std::transform(values.begin(), values.end(), sq.begin(),
                   [](double v) { return v * v; });
    return std::sqrt(pairwise_sum(sq) / static_cast<double>(values.size()));
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) {
        throw InvalidArgument("quantile: empty sample");
    }
    if (!(q >= 0.0 && q <= 1.0)) {
        throw InvalidArgument("quantile: q must lie in [0, 1]");
    }
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

double median(std::vector<double> values) {
    return quantile(std::move(values), 0.5);
}

double correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InvalidArgument("correlation: need two samples of equal length >= 2");
    }
    const double mx = mean_se(x).mean;
    const double my = mean_se(y).mean;
    std::vector<double> xy(x.size()), xx(x.size()), yy(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        xy[i] = dx * dy;
        xx[i] = dx * dx;
        yy[i] = dy * dy;
    }
    return pairwise_sum(xy) / std::sqrt(pairwise_sum(xx) * pairwise_sum(yy));
}

}  // namespace qcd
