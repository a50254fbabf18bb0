#pragma once

#include <cstddef>
#include <vector>

namespace qcd::heat {

/// Default cap on spatial derivative order. Above it, t^{-n/2} amplification
/// makes small-t evaluations unreliable; callers with well-scaled arguments
/// (chaos coefficients at t = T) pass a larger cap explicitly.
inline constexpr int kDefaultMaxOrder = 12;

/// p(t, x, y) = exp(-(x - y)^2 / (2t)) / sqrt(2 pi t); requires t > 0.
double density(double t, double x, double y = 0.0);

/// n-th derivative of p(t, x, y) in x, via the Hermite closed form.
double density_dx(int n, double t, double x, double y = 0.0, int max_order = kDefaultMaxOrder);

/*!
 * Normalized Hermite polynomial
 *   H_n(x) = (-1)^n / sqrt(n!) e^{x^2/2} d^n/dx^n e^{-x^2/2},
 * from the recurrence sqrt(n+1) H_{n+1} = x H_n - sqrt(n) H_{n-1}.
 */
double hermite(int n, double x, int max_order = kDefaultMaxOrder);

/// (-1)^n sqrt(n!) t^{-n/2} p(t, x) H_n(x / sqrt(t)), n >= 1.
double hermite_form(int n, double t, double x, int max_order = kDefaultMaxOrder);

/*!
 * Same derivative by direct symbolic differentiation: p^{(n)}(t, x) =
 * t^{-n/2} P_n(x / sqrt t) p(t, x) with P_0 = 1, P_{n+1} = P_n' - u P_n
 * carried as integer coefficient vectors. Independent of the Hermite
 * recurrence; used for cross-checks.
 */
double density_dx_direct(int n, double t, double x, double y = 0.0,
                         int max_order = kDefaultMaxOrder);

/// Coefficients (ascending powers) of P_n above.
std::vector<double> derivative_polynomial(int n);

/// Standard normal CDF, 0.5 erfc(-z / sqrt 2).
double normal_cdf(double z);

/// Residual |d/dt p^{(n)} - 1/2 d^2/dx^2 p^{(n)}| with both sides by central
/// differences (relative steps 1e-4, one Richardson level). The stencil is evaluated in long
/// double so the residual reflects truncation, not cancellation.
double heat_equation_residual(int n, double t, double x, double y = 0.0);

/// Gauss-Hermite rule for the standard normal weight:
///   E g(Z) ~ sum_i weights[i] g(nodes[i]).
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Rule with `points` nodes; computed once per size and cached.
const GaussHermiteRule& gauss_hermite(std::size_t points = 64);

}  // namespace qcd::heat
