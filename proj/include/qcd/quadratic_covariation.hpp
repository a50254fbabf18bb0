#pragma once

#include <cstddef>
#include <vector>

#include "qcd/grid_paths.hpp"

namespace qcd {

/// Cumulative <X, Y> estimate at each node; value 0 at t = 0.
struct QcovPath {
    TimeGrid grid;
    std::vector<double> values;
};

/// Realized covariation: left-to-right cumulative sum of products of forward
/// increments on the simulation grid.
QcovPath qcov(const SamplePath& x, const SamplePath& y);

struct QcdEstimatorConfig {
    double window_h;       // smoothing window of the kernel estimator
    std::size_t half_width_k;  // symmetric-difference radius, in grid steps

    /// k ~ 1 / sqrt(dt) (so k dt ~ sqrt(dt)) and h = 4 dt clipped below T/2.
    static QcdEstimatorConfig defaults(const TimeGrid& grid);

    /// Enforces h >= 2 dt and k dt < T / 2.
    void validate(const TimeGrid& grid) const;
};

/// (<S,W>_{t+k dt} - <S,W>_{t-k dt}) / (2 k dt) at grid node `node`.
double qcd_strong(const QcovPath& q, std::size_t node, std::size_t k);
double qcd_strong(const SamplePath& s, const SamplePath& w, std::size_t node, std::size_t k);

/*!
 * Kernel-smoothed stochastic difference
 *   t > 0: 3 / (2 h^3) \int_0^h r (<S,W>_{t+r} - <S,W>_{t-r}) dr
 *   t = 0: 3 / h^3 \int_0^h r <S,W>_r dr
 * by composite Simpson on the grid nodes in [0, h]. The window is snapped
 * down to a whole number m >= 2 of grid steps (h_eff = m dt); an odd m closes
 * with the 3/8 rule on the last three panels.
 */
double qcd_smoothed(const QcovPath& q, std::size_t node, double h);
double qcd_smoothed(const SamplePath& s, const SamplePath& w, std::size_t node, double h);

struct QcdProfile {
    SamplePath estimate;
    std::vector<bool> flagged;  // true where the window did not fit (clamped)

    /// Estimates at unflagged nodes only.
    std::vector<double> interior() const;
};

/// qcd_strong at every node; nodes within k steps of either end take the
/// nearest valid estimate and are flagged.
QcdProfile qcd_profile(const SamplePath& s, const SamplePath& w, const QcdEstimatorConfig& cfg);

}  // namespace qcd
