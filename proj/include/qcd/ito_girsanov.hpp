#pragma once

#include <span>
#include <vector>

#include "qcd/deterministic_fn.hpp"
#include "qcd/grid_paths.hpp"
#include "qcd/payoff.hpp"
#include "qcd/stats.hpp"

namespace qcd {

/// Left-endpoint integrand values X_{t_0}, ..., X_{t_{N-1}} on a grid.
struct IntegrandPath {
    TimeGrid grid;
    std::vector<double> values;
    double l2_mass = 0.0;           // sum X_i^2 dt
    bool square_integrable = true;  // l2_mass within the explosion bound
};

inline constexpr double kDefaultExplosionBound = 1e8;

/// Builds an integrand path and evaluates the admissibility proxy
/// (finite values, sum X^2 dt <= explosion_bound).
IntegrandPath make_integrand(const TimeGrid& grid, std::vector<double> values,
                             double explosion_bound = kDefaultExplosionBound);

/// Cumulative Ito sums sum_{j < i} X_{t_j} (W_{t_{j+1}} - W_{t_j}); value 0 at t_0.
SamplePath ito_integral(const IntegrandPath& x, const SamplePath& w);

/// Z_t = exp(-\int_0^t lambda dW - 1/2 \int_0^t lambda^2 du): the dW integral
/// as a left-endpoint sum, the du integral in closed form.
SamplePath stochastic_exponential(const DeterministicFn& lambda, const SamplePath& w);

/// Lambda_t = 1 / Z_t.
SamplePath inverse_path(const SamplePath& z);

/// Per-path Girsanov quantities for a deterministic lambda.
struct MeasureChange {
    DeterministicFn lambda;
    SamplePath density;  // Z
    SamplePath inverse;  // Lambda
    SamplePath shifted;  // W~
};

/// Requires lambda bounded on [0, T] (Novikov then holds automatically).
MeasureChange make_measure_change(const DeterministicFn& lambda, const SamplePath& w);

/// v(t, x) = E[f(W_T) | W_t = x] = \int f(y) p(T - t, x, y) dy.
/// Closed form for every catalog member; Gauss-Hermite is the fallback.
double cond_exp_heat(const Payoff& f, double t, double x, double horizon,
                     std::size_t quadrature_points = 64);

/// d/dx v(t, x) = \int f(y) (y - x) / (T - t) p(T - t, x, y) dy.
/// Closed form p(T - t, x - K) for the indicator, Gauss-Hermite otherwise.
double cond_exp_deriv(const Payoff& f, double t, double x, double horizon,
                      std::size_t quadrature_points = 64);

/// E~[F] estimated as mean(F * Z_T) over P-samples, with its standard error.
MeanSE bayes_reweight(std::span<const double> payoffs, std::span<const double> densities);

}  // namespace qcd
