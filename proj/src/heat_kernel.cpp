#include "qcd/heat_kernel.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "qcd/errors.hpp"

namespace qcd::heat {

namespace {

void require_positive_time(double t) {
    if (!(t > 0.0)) {
        throw DomainError("heat kernel requires t > 0");
    }
}

void require_order(int n, int max_order, int min_order = 0) {
    if (n < min_order) {
        throw InvalidArgument("derivative order " + std::to_string(n) + " below " +
                              std::to_string(min_order));
    }
    if (n > max_order) {
        throw UnsupportedOrder("derivative order " + std::to_string(n) + " exceeds cap " +
                               std::to_string(max_order));
    }
}

GaussHermiteRule build_gauss_hermite(std::size_t points) {
    // Roots of the physicists' Hermite polynomial by Newton iteration on the
    // orthonormal recurrence, then rescaled to the N(0, 1) weight.
    const int n = static_cast<int>(points);
    const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
    std::vector<double> x(points), w(points);
    double z = 0.0;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * x[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * x[1];
        } else {
            z = 2.0 * z - x[i - 2];
        }
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = pim4;
            double p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = w[n - 1 - i] = 2.0 / (pp * pp);
    }
    GaussHermiteRule rule;
    rule.nodes.resize(points);
    rule.weights.resize(points);
    for (std::size_t i = 0; i < points; ++i) {
        // ascending order
        rule.nodes[i] = std::numbers::sqrt2 * x[points - 1 - i];
        rule.weights[i] = w[points - 1 - i] / std::sqrt(std::numbers::pi);
    }
    return rule;
}

}  // namespace

double density(double t, double x, double y) {
    require_positive_time(t);
    const double d = x - y;
    return std::exp(-d * d / (2.0 * t)) / std::sqrt(2.0 * std::numbers::pi * t);
}

namespace {

// Kernel pieces in a chosen floating type; the double instantiation backs the
// public functions, long double backs the finite-difference residuals.
template <class Real>
Real hermite_t(int n, Real x) {
    if (n == 0) {
        return Real(1);
    }
    Real prev = 1;  // H_0
    Real cur = x;   // H_1
    for (int k = 1; k < n; ++k) {
        const Real next = (x * cur - std::sqrt(static_cast<Real>(k)) * prev) /
                          std::sqrt(static_cast<Real>(k + 1));
        prev = cur;
        cur = next;
    }
    return cur;
}

template <class Real>
Real density_t(Real t, Real d) {
    const Real two_pi = Real(2) * std::numbers::pi_v<Real>;
    return std::exp(-d * d / (Real(2) * t)) / std::sqrt(two_pi * t);
}

template <class Real>
Real hermite_form_t(int n, Real t, Real x) {
    const Real sign = (n % 2 == 0) ? Real(1) : Real(-1);
    const Real sqrt_factorial = std::exp(Real(0.5) * std::lgamma(static_cast<Real>(n + 1)));
    return sign * sqrt_factorial * std::pow(t, Real(-0.5) * n) * density_t(t, x) *
           hermite_t(n, x / std::sqrt(t));
}

template <class Real>
Real density_dx_t(int n, Real t, Real d) {
    return n == 0 ? density_t(t, d) : hermite_form_t(n, t, d);
}

}  // namespace

double hermite(int n, double x, int max_order) {
    require_order(n, max_order);
    return hermite_t(n, x);
}

double hermite_form(int n, double t, double x, int max_order) {
    require_order(n, max_order, 1);
    require_positive_time(t);
    return hermite_form_t(n, t, x);
}

double density_dx(int n, double t, double x, double y, int max_order) {
    require_order(n, max_order);
    require_positive_time(t);
    if (n == 0) {
        return density(t, x, y);
    }
    return hermite_form(n, t, x - y, max_order);
}

std::vector<double> derivative_polynomial(int n) {
    if (n < 0) {
        throw InvalidArgument("derivative order must be non-negative");
    }
    std::vector<double> poly{1.0};
    for (int k = 0; k < n; ++k) {
        std::vector<double> next(poly.size() + 1, 0.0);
        for (std::size_t j = 1; j < poly.size(); ++j) {
            next[j - 1] += static_cast<double>(j) * poly[j];
        }
        for (std::size_t j = 0; j < poly.size(); ++j) {
            next[j + 1] -= poly[j];
        }
        poly = std::move(next);
    }
    return poly;
}

double density_dx_direct(int n, double t, double x, double y, int max_order) {
    require_order(n, max_order);
    require_positive_time(t);
    const auto poly = derivative_polynomial(n);
    const double u = (x - y) / std::sqrt(t);
    double value = 0.0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
        value = value * u + *it;
    }
    return std::pow(t, -0.5 * n) * value * density(t, x, y);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double heat_equation_residual(int n, double t, double x, double y) {
    require_order(n, kDefaultMaxOrder);
    require_positive_time(t);
    using Real = long double;
    const Real tt = t;
    const Real d = static_cast<Real>(x) - static_cast<Real>(y);
    const auto time_diff = [&](Real h) {
        return (density_dx_t(n, tt + h, d) - density_dx_t(n, tt - h, d)) / (2 * h);
    };
    const auto space_diff = [&](Real h) {
        return (density_dx_t(n, tt, d + h) - 2 * density_dx_t(n, tt, d) +
                density_dx_t(n, tt, d - h)) /
               (h * h);
    };
    // One Richardson level over steps h and h/2 cancels the O(h^2) term.
    const auto richardson = [](auto diff, Real h) { return (4 * diff(h / 2) - diff(h)) / 3; };
    const Real dt = richardson(time_diff, Real(1e-4) * tt);
    const Real dxx = richardson(space_diff, Real(1e-4) * std::max(Real(1), std::abs(d)));
    return static_cast<double>(std::abs(dt - dxx / 2));
}

const GaussHermiteRule& gauss_hermite(std::size_t points) {
    if (points < 2 || points > 200) {
        throw InvalidArgument("Gauss-Hermite rule size must be in [2, 200]");
    }
    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<GaussHermiteRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[points];
    if (!slot) {
        slot = std::make_unique<GaussHermiteRule>(build_gauss_hermite(points));
    }
    return *slot;
}

}  // namespace qcd::heat
