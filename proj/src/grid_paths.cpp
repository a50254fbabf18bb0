#include "qcd/grid_paths.hpp"

#include <cmath>
#include <ostream>

#include "qcd/errors.hpp"
#include "qcd/rng.hpp"

namespace qcd {

TimeGrid::TimeGrid(double horizon, std::size_t steps) : horizon_(horizon), steps_(steps) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw InvalidArgument("time grid horizon must be positive and finite");
    }
    if (steps < 2) {
        throw InvalidArgument("time grid needs at least 2 steps");
    }
    dt_ = horizon / static_cast<double>(steps);
}

double TimeGrid::node(std::size_t i) const {
    if (i == steps_) {
        return horizon_;
    }
    return static_cast<double>(i) * dt_;
}

std::size_t TimeGrid::index_of(double t) const {
    const double pos = t / dt_;
    const double nearest = std::round(pos);
    if (nearest < 0.0 || nearest > static_cast<double>(steps_) ||
        std::abs(pos - nearest) > 1e-9) {
        throw InvalidArgument("time " + format_double(t) + " is not a grid node");
    }
    return static_cast<std::size_t>(nearest);
}

std::vector<double> TimeGrid::nodes() const {
    std::vector<double> out(steps_ + 1);
    for (std::size_t i = 0; i <= steps_; ++i) {
        out[i] = node(i);
    }
    return out;
}

TimeGrid make_uniform_grid(double horizon, std::size_t steps) { return TimeGrid(horizon, steps); }

SamplePath::SamplePath(TimeGrid grid, std::vector<double> values, std::string label)
    : grid_(grid), values_(std::move(values)), label_(std::move(label)) {
    if (values_.size() != grid_.steps() + 1) {
        throw InvalidArgument("sample path '" + label_ + "' needs N + 1 values");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw InvalidArgument("sample path '" + label_ + "' has a non-finite value");
        }
    }
}

PathEnsemble::PathEnsemble(TimeGrid grid, std::size_t paths, std::uint64_t seed, double start)
    : grid_(grid), paths_(paths), seed_(seed), start_(start) {
    if (paths == 0) {
        throw InvalidArgument("path ensemble needs at least one path");
    }
    if (!std::isfinite(start)) {
        throw InvalidArgument("path ensemble start must be finite");
    }
}

std::vector<double> PathEnsemble::normal_increments(std::size_t index) const {
    if (index >= paths_) {
        throw InvalidArgument("path index out of range");
    }
    NormalStream stream(seed_, index);
    std::vector<double> z(grid_.steps());
    for (double& v : z) {
        v = stream.next();
    }
    return z;
}

SamplePath PathEnsemble::path(std::size_t index) const {
    const auto z = normal_increments(index);
    const double scale = std::sqrt(grid_.dt());
    std::vector<double> values(grid_.steps() + 1);
    values[0] = start_;
    for (std::size_t i = 0; i < z.size(); ++i) {
        values[i + 1] = values[i] + scale * z[i];
    }
    return SamplePath(grid_, std::move(values), "W");
}

std::vector<SamplePath> PathEnsemble::materialize() const {
    std::vector<SamplePath> out;
    out.reserve(paths_);
    for (std::size_t i = 0; i < paths_; ++i) {
        out.push_back(path(i));
    }
    return out;
}

PathEnsemble simulate_brownian(const TimeGrid& grid, std::size_t paths, std::uint64_t seed,
                               double start) {
    return PathEnsemble(grid, paths, seed, start);
}

SamplePath shift_path(const SamplePath& w, const DeterministicFn& lambda) {
    const TimeGrid& grid = w.grid();
    std::vector<double> values(w.values());
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] += lambda.integral(0.0, grid.node(i));
    }
    return SamplePath(grid, std::move(values), "W_tilde");
}

void write_paths_csv(std::ostream& out, const PathEnsemble& ensemble) {
    out << "path_id,t,value\n";
    const TimeGrid& grid = ensemble.grid();
    for (std::size_t p = 0; p < ensemble.size(); ++p) {
        const SamplePath path = ensemble.path(p);
        for (std::size_t i = 0; i < path.size(); ++i) {
            out << p << ',' << format_double(grid.node(i)) << ',' << format_double(path[i])
                << '\n';
        }
    }
}

}  // namespace qcd
