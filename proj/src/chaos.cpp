#include "qcd/chaos.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "qcd/errors.hpp"
#include "qcd/heat_kernel.hpp"
#include "qcd/ito_girsanov.hpp"

namespace qcd {

namespace {

void require_chaos_order(int n, int max_order) {
    if (n < 0) {
        throw InvalidArgument("chaos order must be non-negative");
    }
    if (n > max_order) {
        throw UnsupportedOrder("chaos order " + std::to_string(n) + " exceeds cap " +
                               std::to_string(max_order));
    }
}

}  // namespace

double stroock_coeff(int n, double horizon, double start, double strike, int max_order) {
    require_chaos_order(n, max_order);
    if (!(horizon > 0.0)) {
        throw DomainError("chaos coefficients need T > 0");
    }
    if (n == 0) {
        return heat::normal_cdf((start - strike) / std::sqrt(horizon));
    }
    return heat::density_dx(n - 1, horizon, start - strike, 0.0, max_order);
}

double stroock_coeff_com(int n, double horizon, double start, double strike,
                         const DeterministicFn& lambda, int max_order) {
    return stroock_coeff(n, horizon, start, strike + lambda.integral(0.0, horizon), max_order);
}

ChaosCoefficients indicator_coefficients(int order, double horizon, double start, double strike) {
    require_chaos_order(order, kChaosMaxOrder);
    ChaosCoefficients out{horizon, start, strike, {}};
    out.g.resize(static_cast<std::size_t>(order) + 1);
    for (int n = 0; n <= order; ++n) {
        out.g[n] = stroock_coeff(n, horizon, start, strike);
    }
    return out;
}

ChaosCoefficients indicator_coefficients_com(int order, double horizon, double start,
                                             double strike, const DeterministicFn& lambda) {
    return indicator_coefficients(order, horizon, start,
                                  strike + lambda.integral(0.0, horizon));
}

double stroock_coeff_general(const PayoffSpec& spec, int n, std::span<const double> times,
                             std::size_t quadrature_points) {
    if (n < 0 || n > kGeneralCoeffMaxOrder) {
        throw UnsupportedOrder("general Stroock coefficient supports orders 0.." +
                               std::to_string(kGeneralCoeffMaxOrder));
    }
    const double horizon = spec.horizon;
    if (n == 0) {
        return cond_exp_heat(spec.payoff, 0.0, spec.start, horizon, quadrature_points);
    }
    if (times.size() != static_cast<std::size_t>(n)) {
        throw InvalidArgument("general Stroock coefficient needs exactly n times");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0 || !(times[i] < horizon) || (i > 0 && times[i] < times[i - 1])) {
            throw InvalidArgument("coefficient times must be nondecreasing in [0, T)");
        }
    }

    const auto& rule = heat::gauss_hermite(quadrature_points);
    // level(k, y): the k-th nested integrand (0-based) as a function of W_{t_k} = y.
    std::function<double(int, double)> level = [&](int k, double y) -> double {
        if (k == n - 1) {
            return cond_exp_deriv(spec.payoff, times[k], y, horizon, quadrature_points);
        }
        const double tau = times[k + 1] - times[k];
        if (tau == 0.0) {
            // D of a function evaluated at the same instant: central difference.
            const double h = 1e-5 * std::max(1.0, std::abs(y));
            return (level(k + 1, y + h) - level(k + 1, y - h)) / (2.0 * h);
        }
        const double s = std::sqrt(tau);
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            sum += rule.weights[i] * rule.nodes[i] * level(k + 1, y + s * rule.nodes[i]);
        }
        return sum / s;
    };

    if (times[0] == 0.0) {
        return level(0, spec.start);
    }
    const double s = std::sqrt(times[0]);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * level(0, spec.start + s * rule.nodes[i]);
    }
    return sum;
}

std::vector<double> iterated_integrals(int n, const SamplePath& w, int max_order) {
    require_chaos_order(n, max_order);
    std::vector<double> state(static_cast<std::size_t>(n) + 1, 0.0);
    state[0] = 1.0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        const double dw = w[i + 1] - w[i];
        // descending k so that I^{(k-1)} is still the left-endpoint value
        for (std::size_t k = state.size() - 1; k >= 1; --k) {
            state[k] += state[k - 1] * dw;
        }
    }
    return state;
}

double iterated_integral_const(double c, int n, const SamplePath& w, int max_order) {
    require_chaos_order(n, max_order);
    if (n == 0) {
        return c;
    }
    std::vector<double> state(static_cast<std::size_t>(n) + 1, 0.0);
    state[0] = c;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        const double dw = w[i + 1] - w[i];
        for (std::size_t k = state.size() - 1; k >= 1; --k) {
            state[k] += state[k - 1] * dw;
        }
    }
    return state.back();
}

std::vector<double> truncated_chaos_partials(const ChaosCoefficients& coeffs,
                                             const SamplePath& w) {
    const auto j = iterated_integrals(coeffs.order(), w);
    std::vector<double> partials(j.size());
    double sum = 0.0;
    for (std::size_t n = 0; n < j.size(); ++n) {
        sum += coeffs.g[n] * j[n];
        partials[n] = sum;
    }
    return partials;
}

double truncated_chaos(const ChaosCoefficients& coeffs, const SamplePath& w) {
    return truncated_chaos_partials(coeffs, w).back();
}

NormIdentity norm_identity(const ChaosCoefficients& coeffs, int truncation) {
    if (truncation < 0 || truncation > coeffs.order()) {
        throw InvalidArgument("norm identity truncation outside the available coefficients");
    }
    double sum = coeffs.g[0] * coeffs.g[0];
    double volume = 1.0;  // T^n / n!
    for (int n = 1; n <= truncation; ++n) {
        volume *= coeffs.horizon / n;
        sum += coeffs.g[n] * coeffs.g[n] * volume;
    }
    const double target =
        heat::normal_cdf((coeffs.start - coeffs.strike) / std::sqrt(coeffs.horizon));
    return {sum, target};
}

double qcd_nth_derivative(int n, double t, double w_t, double horizon, double strike,
                          int max_order) {
    if (n < 1) {
        throw InvalidArgument("QCD derivative order must be >= 1");
    }
    require_chaos_order(n, max_order);
    if (!(t < horizon)) {
        throw DomainError("QCD derivative needs t < T");
    }
    return heat::density_dx(n - 1, horizon - t, w_t, strike, max_order);
}

}  // namespace qcd
