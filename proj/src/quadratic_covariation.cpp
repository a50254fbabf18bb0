#include "qcd/quadratic_covariation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcd/errors.hpp"

namespace qcd {

namespace {

void require_same_grid(const SamplePath& a, const SamplePath& b) {
    if (!(a.grid() == b.grid())) {
        throw InvalidArgument("paths '" + a.label() + "' and '" + b.label() +
                              "' live on different grids");
    }
}

// Composite Simpson over f(0..m) with unit spacing; 3/8 rule closes odd m.
double simpson_nodes(const std::vector<double>& f) {
    const std::size_t m = f.size() - 1;
    std::size_t even_end = (m % 2 == 0) ? m : m - 3;
    double sum = 0.0;
    for (std::size_t j = 0; j + 2 <= even_end; j += 2) {
        sum += (f[j] + 4.0 * f[j + 1] + f[j + 2]) / 3.0;
    }
    if (m % 2 == 1) {
        const std::size_t j = even_end;
        sum += 3.0 * (f[j] + 3.0 * f[j + 1] + 3.0 * f[j + 2] + f[j + 3]) / 8.0;
    }
    return sum;
}

}  // namespace

QcovPath qcov(const SamplePath& x, const SamplePath& y) {
    require_same_grid(x, y);
    std::vector<double> values(x.size(), 0.0);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        values[i + 1] = values[i] + (x[i + 1] - x[i]) * (y[i + 1] - y[i]);
    }
    return {x.grid(), std::move(values)};
}

QcdEstimatorConfig QcdEstimatorConfig::defaults(const TimeGrid& grid) {
    const auto k_root = static_cast<std::size_t>(std::llround(1.0 / std::sqrt(grid.dt())));
    const std::size_t k_cap = (grid.steps() - 1) / 2;
    QcdEstimatorConfig cfg{4.0 * grid.dt(), std::clamp<std::size_t>(k_root, 1, k_cap)};
    return cfg;
}

void QcdEstimatorConfig::validate(const TimeGrid& grid) const {
    if (half_width_k < 1) {
        throw InvalidArgument("strong estimator half width k must be >= 1");
    }
    if (!(static_cast<double>(half_width_k) * grid.dt() < 0.5 * grid.horizon())) {
        throw OutOfWindow("strong estimator window k dt must be below T / 2");
    }
    if (!(window_h >= 2.0 * grid.dt() * (1.0 - 1e-12))) {
        throw WindowTooSmall("smoothing window h must cover at least two grid steps");
    }
}

double qcd_strong(const QcovPath& q, std::size_t node, std::size_t k) {
    const std::size_t n = q.grid.steps();
    if (k < 1) {
        throw InvalidArgument("strong estimator half width k must be >= 1");
    }
    if (node < k || node + k > n) {
        throw OutOfWindow("strong estimator window at node " + std::to_string(node) +
                          " leaves the grid");
    }
    return (q.values[node + k] - q.values[node - k]) /
           (2.0 * static_cast<double>(k) * q.grid.dt());
}

double qcd_strong(const SamplePath& s, const SamplePath& w, std::size_t node, std::size_t k) {
    return qcd_strong(qcov(s, w), node, k);
}

double qcd_smoothed(const QcovPath& q, std::size_t node, double h) {
    const TimeGrid& grid = q.grid;
    const double dt = grid.dt();
    if (!(h >= 2.0 * dt * (1.0 - 1e-12))) {
        throw WindowTooSmall("smoothing window h must cover at least two grid steps");
    }
    const auto m = static_cast<std::size_t>(std::floor(h / dt + 1e-9));
    const double h_eff = static_cast<double>(m) * dt;
    std::vector<double> f(m + 1);
    if (node == 0) {
        if (m > grid.steps()) {
            throw OutOfWindow("smoothing window exceeds the horizon");
        }
        for (std::size_t j = 0; j <= m; ++j) {
            f[j] = static_cast<double>(j) * dt * q.values[j];
        }
        return 3.0 / (h_eff * h_eff * h_eff) * dt * simpson_nodes(f);
    }
    if (m > node || node + m > grid.steps()) {
        throw OutOfWindow("smoothing window at node " + std::to_string(node) +
                          " exceeds min(t, T - t)");
    }
    for (std::size_t j = 0; j <= m; ++j) {
        f[j] = static_cast<double>(j) * dt * (q.values[node + j] - q.values[node - j]);
    }
    return 3.0 / (2.0 * h_eff * h_eff * h_eff) * dt * simpson_nodes(f);
}

double qcd_smoothed(const SamplePath& s, const SamplePath& w, std::size_t node, double h) {
    return qcd_smoothed(qcov(s, w), node, h);
}

std::vector<double> QcdProfile::interior() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < flagged.size(); ++i) {
        if (!flagged[i]) {
            out.push_back(estimate[i]);
        }
    }
    return out;
}

QcdProfile qcd_profile(const SamplePath& s, const SamplePath& w, const QcdEstimatorConfig& cfg) {
    cfg.validate(s.grid());
    const QcovPath q = qcov(s, w);
    const std::size_t n = q.grid.steps();
    const std::size_t k = cfg.half_width_k;
    std::vector<double> values(n + 1);
    std::vector<bool> flagged(n + 1, false);
    for (std::size_t i = k; i + k <= n; ++i) {
        values[i] = qcd_strong(q, i, k);
    }
    for (std::size_t i = 0; i < k; ++i) {
        values[i] = values[k];
        flagged[i] = true;
    }
    for (std::size_t i = n - k + 1; i <= n; ++i) {
        values[i] = values[n - k];
        flagged[i] = true;
    }
    return {SamplePath(q.grid, std::move(values), "QCD"), std::move(flagged)};
}

}  // namespace qcd
