#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qcd {

/// 1{y >= strike}
struct Indicator {
    double strike = 0.0;
};

/// sum_k coeffs[k] y^k
struct Polynomial {
    std::vector<double> coeffs;
};

/// amplitude * sin(frequency * y + phase); cos is phase = pi / 2.
struct Trig {
    double amplitude = 1.0;
    double frequency = 1.0;
    double phase = 0.0;
};

/*!
 * Catalog of terminal payoffs f(W_T). Every smooth member grows slowly
 * enough that x^{-2} log^+ |f(x)|^2 -> 0, so the QCD Clark-Ocone integrand
 * exists; membership in the catalog is the only check.
 *
 * Text syntax: "indicator:K", "poly:c0,c1,...", "sin", "cos",
 * "sin:A,w,phi".
 */
using Payoff = std::variant<Indicator, Polynomial, Trig>;

Payoff parse_payoff(std::string_view text);
std::string to_string(const Payoff& payoff);

double evaluate(const Payoff& payoff, double y);

bool is_indicator(const Payoff& payoff);

/// f' for smooth members; the indicator throws Unsupported.
Payoff derivative(const Payoff& payoff);

/// F = f(W_T) for a Brownian motion started at `start`, horizon T.
struct PayoffSpec {
    Payoff payoff;
    double horizon = 1.0;
    double start = 0.0;
};

}  // namespace qcd
