#pragma once

#include <span>
#include <vector>

#include "qcd/deterministic_fn.hpp"
#include "qcd/grid_paths.hpp"
#include "qcd/payoff.hpp"

namespace qcd {

/// Order cap for chaos quantities. Coefficients are evaluated at the full
/// horizon T, where the Hermite form stays well conditioned far beyond the
/// heat-kernel default cap.
inline constexpr int kChaosMaxOrder = 64;

/// Nesting cap for the general (quadrature) coefficient route.
inline constexpr int kGeneralCoeffMaxOrder = 3;

/*!
 * Chaos coefficients of the Brownian indicator 1{W_T >= K}, W_0 = x:
 *   g_0 = Phi((x - K) / sqrt T),  g_n = d^{n-1}/dx^{n-1} p(T, x - K), n >= 1,
 * each constant on the simplex 0 < t_1 <= ... <= t_n < T.
 */
double stroock_coeff(int n, double horizon, double start, double strike,
                     int max_order = kChaosMaxOrder);

/// Indicator coefficients when expanding in W~ = W + \int lambda: the tilde
/// Brownian motion sees the strike shifted to K + \int_0^T lambda.
double stroock_coeff_com(int n, double horizon, double start, double strike,
                         const DeterministicFn& lambda, int max_order = kChaosMaxOrder);

struct ChaosCoefficients {
    double horizon = 1.0;
    double start = 0.0;
    double strike = 0.0;
    std::vector<double> g;  // g_0 .. g_order

    int order() const { return static_cast<int>(g.size()) - 1; }
};

ChaosCoefficients indicator_coefficients(int order, double horizon, double start, double strike);
ChaosCoefficients indicator_coefficients_com(int order, double horizon, double start,
                                             double strike, const DeterministicFn& lambda);

/*!
 * Coefficient g_n(t_1, ..., t_n) = E[D_{t_1} E[ ... D_{t_n} E[F | F_{t_n}] ... | F_{t_1}]]
 * evaluated by nesting heat-semigroup quadratures: the innermost level is
 * cond_exp_deriv at t_n, each outer level differentiates the Gaussian
 * average of the next one, and the outermost level averages over W_{t_1}.
 * `times` must be nondecreasing in [0, T) with n <= 3; for n = 0 it is
 * ignored and g_0 = E F.
 */
double stroock_coeff_general(const PayoffSpec& spec, int n, std::span<const double> times,
                             std::size_t quadrature_points = 64);

/// Iterated left-endpoint integrals I^{(0)} = c,
/// I^{(k)}_{t_{i+1}} = I^{(k)}_{t_i} + I^{(k-1)}_{t_i} (W_{t_{i+1}} - W_{t_i});
/// returns I^{(n)}_T.
double iterated_integral_const(double c, int n, const SamplePath& w,
                               int max_order = kChaosMaxOrder);

/// J_0(1), ..., J_n(1) at T from a single pass.
std::vector<double> iterated_integrals(int n, const SamplePath& w, int max_order = kChaosMaxOrder);

/// g_0 + sum_{n=1}^{order} J_n(g_n).
double truncated_chaos(const ChaosCoefficients& coeffs, const SamplePath& w);

/// Partial sums g_0 + ... + J_k(g_k) for k = 0..order.
std::vector<double> truncated_chaos_partials(const ChaosCoefficients& coeffs, const SamplePath& w);

struct NormIdentity {
    double partial_sum = 0.0;  // g_0^2 + sum_{n=1}^{N} g_n^2 T^n / n!
    double target = 0.0;       // E F^2 = Phi((x - K) / sqrt T)
};

/// L2 norm identity for constant-on-simplex (indicator) coefficients,
/// using E J_n(c)^2 = c^2 vol(S_n) = c^2 T^n / n!.
NormIdentity norm_identity(const ChaosCoefficients& coeffs, int truncation);

/// n-th QCD of E[1{W_T >= K} | F_t]: d^{n-1}/dx^{n-1} p(T - t, w_t - K).
double qcd_nth_derivative(int n, double t, double w_t, double horizon, double strike,
                          int max_order = kChaosMaxOrder);

}  // namespace qcd
