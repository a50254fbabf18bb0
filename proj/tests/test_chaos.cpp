#include <cmath>
#include <vector>

#include "doctest.h"
#include "qcd/chaos.hpp"
#include "qcd/clark_ocone.hpp"
#include "qcd/errors.hpp"
#include "qcd/heat_kernel.hpp"
#include "qcd/stats.hpp"

using namespace qcd;

namespace {

// Elementary symmetric polynomials of the increments via Newton's identities.
std::vector<double> elementary_symmetric(const SamplePath& w, int n) {
    std::vector<double> power(n + 1, 0.0);
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        const double d = w[i + 1] - w[i];
        double dk = 1.0;
        for (int k = 1; k <= n; ++k) {
            dk *= d;
            power[k] += dk;
        }
    }
    std::vector<double> e(n + 1, 0.0);
    e[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        double s = 0.0;
        for (int i = 1; i <= k; ++i) {
            s += ((i % 2) ? 1.0 : -1.0) * e[k - i] * power[i];
        }
        e[k] = s / k;
    }
    return e;
}

}  // namespace

TEST_CASE("indicator coefficients") {
    CHECK(stroock_coeff(0, 1.0, 0.0, 0.0) == 0.5);
    CHECK(stroock_coeff(1, 1.0, 0.0, 0.0) == doctest::Approx(heat::density(1.0, 0.0)).epsilon(1e-15));
    CHECK(stroock_coeff(2, 1.0, 0.0, 0.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-16));
    CHECK(stroock_coeff(3, 2.0, 0.3, 0.5) == doctest::Approx(heat::density_dx(2, 2.0, -0.2)).epsilon(1e-14));
    CHECK_THROWS_AS(stroock_coeff(-1, 1.0, 0.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(stroock_coeff(65, 1.0, 0.0, 0.0), UnsupportedOrder);

    const ChaosCoefficients c = indicator_coefficients(6, 1.0, 0.0, 0.5);
    CHECK(c.order() == 6);
    for (int n = 1; n <= 6; ++n) {
        CHECK(c.g[n] == doctest::Approx(heat::density_dx_direct(n - 1, 1.0, -0.5)).epsilon(1e-10));
    }
}

TEST_CASE("shifted strike under a measure change") {
    const DeterministicFn lambda = DeterministicFn::linear(0.2, 0.6);
    for (int n = 0; n <= 5; ++n) {
        CHECK(stroock_coeff_com(n, 1.0, 0.1, 0.5, lambda) == stroock_coeff(n, 1.0, 0.1, 1.0));
        CHECK(stroock_coeff_com(n, 1.0, 0.1, 0.5, DeterministicFn::zero()) == stroock_coeff(n, 1.0, 0.1, 0.5));
    }
}

TEST_CASE("quadrature route agrees with closed forms") {
    const PayoffSpec digital{Indicator{0.5}, 1.0, 0.0};
    const double times3[] = {0.2, 0.45, 0.7};
    for (int n = 0; n <= 3; ++n) {
        const double closed = stroock_coeff(n, 1.0, 0.0, 0.5);
        CHECK(std::abs(stroock_coeff_general(digital, n, std::span(times3, n)) - closed) < 1e-10);
    }

    // smooth payoffs: g_n = E f^{(n)}(W_T)
    const PayoffSpec sine{Trig{}, 1.0, 0.3};
    const double damp = std::exp(-0.5);
    const double expected[] = {damp * std::sin(0.3), damp * std::cos(0.3), -damp * std::sin(0.3),
                               -damp * std::cos(0.3)};
    for (int n = 0; n <= 3; ++n) {
        CHECK(std::abs(stroock_coeff_general(sine, n, std::span(times3, n)) - expected[n]) < 1e-10);
    }
    const PayoffSpec cubic{Polynomial{{0, 0, 0, 1}}, 2.0, 0.5};
    const double t2[] = {0.5, 1.0};
    // E 6 W_T = 6 x
    CHECK(std::abs(stroock_coeff_general(cubic, 2, t2) - 3.0) < 1e-10);

    const double bad[] = {0.5, 0.2};
    CHECK_THROWS_AS(stroock_coeff_general(sine, 2, bad), InvalidArgument);
    const double four[] = {0.1, 0.2, 0.3, 0.4};
    CHECK_THROWS_AS(stroock_coeff_general(sine, 4, four), UnsupportedOrder);
}

TEST_CASE("iterated integrals match symmetric polynomials") {
    const PathEnsemble ens = simulate_brownian(make_uniform_grid(1.0, 200), 5, 19, 0.0);
    for (std::size_t p = 0; p < ens.size(); ++p) {
        const SamplePath w = ens.path(p);
        const auto j = iterated_integrals(6, w);
        const auto e = elementary_symmetric(w, 6);
        for (int n = 0; n <= 6; ++n) {
            CHECK(j[n] == doctest::Approx(e[n]).epsilon(1e-9).scale(1e-3));
        }
        CHECK(iterated_integral_const(2.5, 3, w) == doctest::Approx(2.5 * j[3]).epsilon(1e-14));
    }
}

TEST_CASE("second moments of iterated integrals") {
    const PathEnsemble ens = simulate_brownian(make_uniform_grid(1.0, 256), 20000, 23, 0.0);
    std::vector<std::vector<double>> sq(5, std::vector<double>(ens.size()));
    for (std::size_t p = 0; p < ens.size(); ++p) {
        const auto j = iterated_integrals(4, ens.path(p));
        for (int n = 0; n <= 4; ++n) {
            sq[n][p] = j[n] * j[n];
        }
    }
    double fact = 1.0;
    for (int n = 1; n <= 4; ++n) {
        fact *= n;
        const MeanSE m = mean_se(sq[n]);
        CHECK(std::abs(m.mean - 1.0 / fact) < 3.0 * m.se);
    }
}

TEST_CASE("norm identity partial sums") {
    const ChaosCoefficients c = indicator_coefficients(40, 1.0, 0.0, 0.0);
    double previous = 0.0;
    for (int n = 0; n <= 40; ++n) {
        const NormIdentity ni = norm_identity(c, n);
        CHECK(ni.partial_sum >= previous);
        CHECK(ni.partial_sum <= ni.target);
        previous = ni.partial_sum;
    }
    CHECK(norm_identity(c, 40).target == 0.5);
    CHECK_THROWS_AS(norm_identity(c, 41), InvalidArgument);

    const ChaosCoefficients off = indicator_coefficients(40, 1.0, 0.0, 1.0);
    CHECK(norm_identity(off, 0).target == doctest::Approx(heat::normal_cdf(-1.0)).epsilon(1e-15));
    const NormIdentity away = norm_identity(off, 40);
    const NormIdentity at = norm_identity(c, 40);
    CHECK(away.target - away.partial_sum < at.target - at.partial_sum);
}

TEST_CASE("truncated expansion") {
    const ChaosCoefficients c = indicator_coefficients(5, 1.0, 0.0, 0.5);
    const SamplePath w = simulate_brownian(make_uniform_grid(1.0, 128), 1, 2, 0.0).path(0);
    const auto partials = truncated_chaos_partials(c, w);
    const auto j = iterated_integrals(5, w);
    CHECK(partials.size() == 6);
    CHECK(partials[0] == c.g[0]);
    CHECK(partials[2] == doctest::Approx(c.g[0] + c.g[1] * j[1] + c.g[2] * j[2]).epsilon(1e-14));
    CHECK(truncated_chaos(c, w) == partials.back());

    CHECK(qcd_nth_derivative(1, 0.25, 0.1, 1.0, 0.5) == doctest::Approx(heat::density(0.75, -0.4)).epsilon(1e-14));
    CHECK(qcd_nth_derivative(3, 0.25, 0.1, 1.0, 0.5) == doctest::Approx(heat::density_dx(2, 0.75, -0.4)).epsilon(1e-14));
}

TEST_CASE("reference cases") {
    CHECK(stroock_coeff(1, 1.0, 0.4, 0.4) == doctest::Approx(0.3989422804).epsilon(1e-10));

    const DeterministicFn c = DeterministicFn::constant(0.3);
    CHECK(stroock_coeff_com(0, 1.0, 0.0, 0.5, c) == doctest::Approx(heat::normal_cdf(-0.8)).epsilon(1e-15));
    CHECK(stroock_coeff_com(1, 1.0, 0.0, 0.5, c) == doctest::Approx(heat::density(1.0, -0.8)).epsilon(1e-15));

    const PayoffSpec square{Polynomial{{0, 0, 1}}, 1.0, 0.0};
    const double t1[] = {0.4};
    const double t2[] = {0.3, 0.6};
    CHECK(stroock_coeff_general(square, 0, {}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(stroock_coeff_general(square, 1, t1)) < 1e-12);
    CHECK(stroock_coeff_general(square, 2, t2) == doctest::Approx(2.0).epsilon(1e-10));

    const PathEnsemble ens = simulate_brownian(make_uniform_grid(1.0, 4096), 10, 3, 0.4);
    for (std::size_t p = 0; p < ens.size(); ++p) {
        const SamplePath w = ens.path(p);
        const double d = w.terminal() - 0.4;
        CHECK(std::abs(iterated_integral_const(1.0, 2, w) - (0.5 * d * d - 0.5)) < 5.0 * std::sqrt(1.0 / 4096));
    }

    const PayoffSpec digital{Indicator{0.5}, 1.0, 0.0};
    for (double t : {0.0, 0.3}) {
        CHECK(qcd_nth_derivative(1, t, 0.2, 1.0, 0.5) == integrand(digital, t, 0.2, 1e-4));
    }
}

TEST_CASE("higher derivatives are martingales in t") {
    const PathEnsemble ens = simulate_brownian(make_uniform_grid(1.0, 2), 50000, 29, 0.0);
    for (int n = 1; n <= 3; ++n) {
        std::vector<double> v(ens.size());
        for (std::size_t p = 0; p < ens.size(); ++p) {
            v[p] = qcd_nth_derivative(n, 0.5, ens.path(p)[1], 1.0, 0.5);
        }
        const MeanSE m = mean_se(v);
        CHECK(std::abs(m.mean - heat::density_dx(n - 1, 1.0, -0.5)) < 3.0 * m.se);
    }
}
