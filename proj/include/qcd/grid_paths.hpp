#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qcd/deterministic_fn.hpp"

namespace qcd {

/// Uniform partition 0 = t_0 < ... < t_N = T. Nodes are i * (T / N), never
/// running sums, and the last node is T exactly.
class TimeGrid {
  public:
    TimeGrid(double horizon, std::size_t steps);

    double horizon() const { return horizon_; }
    std::size_t steps() const { return steps_; }
    double dt() const { return dt_; }
    double node(std::size_t i) const;

    /// Index of the node closest to t; throws if t is not within 1e-9 * dt of
    /// a node.
    std::size_t index_of(double t) const;

    std::vector<double> nodes() const;

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

  private:
    double horizon_;
    std::size_t steps_;
    double dt_;
};

TimeGrid make_uniform_grid(double horizon, std::size_t steps);

/// Values of one process at every node of a grid. All values are finite.
class SamplePath {
  public:
    SamplePath(TimeGrid grid, std::vector<double> values, std::string label);

    const TimeGrid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    const std::string& label() const { return label_; }

    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }
    double terminal() const { return values_.back(); }

  private:
    TimeGrid grid_;
    std::vector<double> values_;
    std::string label_;
};

/*!
 * An immutable ensemble of M Brownian paths on a shared grid.
 *
 * Paths are regenerated on demand from (seed, path index): path(i) is a pure
 * function of the ensemble parameters, so members can be produced in any
 * order on any thread and a long ensemble never has to be held in memory.
 */
class PathEnsemble {
  public:
    PathEnsemble(TimeGrid grid, std::size_t paths, std::uint64_t seed, double start);

    const TimeGrid& grid() const { return grid_; }
    std::size_t size() const { return paths_; }
    std::uint64_t seed() const { return seed_; }
    double start() const { return start_; }

    SamplePath path(std::size_t index) const;

    /// Only the standard-normal increments of path `index` (length N).
    std::vector<double> normal_increments(std::size_t index) const;

    std::vector<SamplePath> materialize() const;

  private:
    TimeGrid grid_;
    std::size_t paths_;
    std::uint64_t seed_;
    double start_;
};

/// Brownian ensemble with W_0 = start and N(0, dt) increments; path i draws
/// from the normal stream keyed by (seed, i).
PathEnsemble simulate_brownian(const TimeGrid& grid, std::size_t paths, std::uint64_t seed,
                               double start);

/// W~_t = W_t + \int_0^t lambda(u) du, integral in closed form.
SamplePath shift_path(const SamplePath& w, const DeterministicFn& lambda);

/// CSV dump with header "path_id,t,value", one row per node.
void write_paths_csv(std::ostream& out, const PathEnsemble& ensemble);

}  // namespace qcd
