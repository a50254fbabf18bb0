#include "qcd/ito_girsanov.hpp"

#include <cmath>
#include <string>

#include "qcd/errors.hpp"
#include "qcd/heat_kernel.hpp"

namespace qcd {

namespace {

void require_before_horizon(double t, double horizon) {
    if (!(t < horizon)) {
        throw DomainError("conditional expectation needs t < T");
    }
    if (t < 0.0) {
        throw DomainError("conditional expectation needs t >= 0");
    }
}

// E[(x + s Z)^k] for Z ~ N(0, 1).
double shifted_moment(int k, double x, double s) {
    double sum = 0.0;
    double binom = 1.0;       // C(k, j)
    double double_fact = 1.0;  // (j - 1)!!
    for (int j = 0; j <= k; ++j) {
        if (j > 0) {
            binom = binom * (k - j + 1) / j;
        }
        if (j % 2 == 0) {
            if (j >= 2) {
                double_fact *= (j - 1);
            }
            sum += binom * std::pow(x, k - j) * std::pow(s, j) * double_fact;
        }
    }
    return sum;
}

}  // namespace

IntegrandPath make_integrand(const TimeGrid& grid, std::vector<double> values,
                             double explosion_bound) {
    if (values.size() != grid.steps()) {
        throw InvalidArgument("integrand path needs N left-endpoint values");
    }
    double mass = 0.0;
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw InvalidArgument("integrand path has a non-finite value");
        }
        mass += v * v * grid.dt();
    }
    return {grid, std::move(values), mass, mass <= explosion_bound};
}

SamplePath ito_integral(const IntegrandPath& x, const SamplePath& w) {
    if (!(x.grid == w.grid())) {
        throw InvalidArgument("integrand and integrator live on different grids");
    }
    std::vector<double> out(w.size(), 0.0);
    for (std::size_t i = 0; i < x.values.size(); ++i) {
        out[i + 1] = out[i] + x.values[i] * (w[i + 1] - w[i]);
    }
    return SamplePath(w.grid(), std::move(out), "ito(" + w.label() + ")");
}

SamplePath stochastic_exponential(const DeterministicFn& lambda, const SamplePath& w) {
    const TimeGrid& grid = w.grid();
    std::vector<double> z(w.size());
    double stochastic_part = 0.0;
    z[0] = 1.0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        stochastic_part += lambda(grid.node(i)) * (w[i + 1] - w[i]);
        z[i + 1] = std::exp(-stochastic_part -
                            0.5 * lambda.integral_of_square(0.0, grid.node(i + 1)));
    }
    return SamplePath(grid, std::move(z), "Z");
}

SamplePath inverse_path(const SamplePath& z) {
    std::vector<double> inv(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (!(z[i] > 0.0)) {
            throw DomainError("stochastic exponential must be positive");
        }
        inv[i] = 1.0 / z[i];
    }
    return SamplePath(z.grid(), std::move(inv), "Lambda");
}

MeasureChange make_measure_change(const DeterministicFn& lambda, const SamplePath& w) {
    if (!std::isfinite(lambda.sup_abs(w.grid().horizon()))) {
        throw InvalidArgument("lambda must be bounded on [0, T]");
    }
    SamplePath z = stochastic_exponential(lambda, w);
    SamplePath inv = inverse_path(z);
    return {lambda, std::move(z), std::move(inv), shift_path(w, lambda)};
}

double cond_exp_heat(const Payoff& f, double t, double x, double horizon,
                     std::size_t quadrature_points) {
    require_before_horizon(t, horizon);
    const double tau = horizon - t;
    if (const auto* ind = std::get_if<Indicator>(&f)) {
        return heat::normal_cdf((x - ind->strike) / std::sqrt(tau));
    }
    if (const auto* poly = std::get_if<Polynomial>(&f)) {
        double v = 0.0;
        for (std::size_t k = 0; k < poly->coeffs.size(); ++k) {
            v += poly->coeffs[k] * shifted_moment(static_cast<int>(k), x, std::sqrt(tau));
        }
        return v;
    }
    if (const auto* trig = std::get_if<Trig>(&f)) {
        // E sin(a + b Z) = e^{-b^2/2} sin a
        const double w = trig->frequency;
        return trig->amplitude * std::exp(-0.5 * w * w * tau) * std::sin(w * x + trig->phase);
    }
    const auto& rule = heat::gauss_hermite(quadrature_points);
    const double s = std::sqrt(tau);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * evaluate(f, x + s * rule.nodes[i]);
    }
    return sum;
}

double cond_exp_deriv(const Payoff& f, double t, double x, double horizon,
                      std::size_t quadrature_points) {
    require_before_horizon(t, horizon);
    const double tau = horizon - t;
    if (const auto* ind = std::get_if<Indicator>(&f)) {
        return heat::density(tau, x - ind->strike);
    }
    // d/dx p(tau, x, y) = (y - x) / tau p; with y = x + s z this is z / s.
    const auto& rule = heat::gauss_hermite(quadrature_points);
    const double s = std::sqrt(tau);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * rule.nodes[i] * evaluate(f, x + s * rule.nodes[i]);
    }
    return sum / s;
}

MeanSE bayes_reweight(std::span<const double> payoffs, std::span<const double> densities) {
    if (payoffs.size() != densities.size()) {
        throw InvalidArgument("bayes_reweight: payoff and density samples differ in length");
    }
    std::vector<double> weighted(payoffs.size());
    for (std::size_t i = 0; i < payoffs.size(); ++i) {
        weighted[i] = payoffs[i] * densities[i];
    }
    return mean_se(weighted);
}

}  // namespace qcd
