#pragma once

#include <cstddef>
#include <vector>

#include "qcd/deterministic_fn.hpp"
#include "qcd/grid_paths.hpp"

namespace qcd {

/*!
 * Black-Scholes-Merton market with deterministic drift b, volatility a and
 * rate r, and a digital claim V_T = 1{W_T >= K} on the driving Brownian
 * motion (not on the stock).
 */
struct MarketSpec {
    DeterministicFn drift = DeterministicFn::constant(0.05);
    DeterministicFn volatility = DeterministicFn::constant(0.2);
    DeterministicFn rate = DeterministicFn::constant(0.01);
    double strike = 0.5;
    double horizon = 1.0;
    double initial_price = 1.0;

    /// Throws if a vanishes on [0, T], P_0 <= 0 or T <= 0.
    void validate() const;

    /// lambda_t = (b_t - r_t) / a_t as a DeterministicFn. Needs constant a
    /// (so lambda stays in the constant/linear family); otherwise Unsupported.
    DeterministicFn market_price_of_risk() const;

    /// D_t = exp(-\int_0^t r).
    double discount(double t) const;
};

/// (b(t) - r(t)) / a(t); DomainError when a(t) = 0.
double market_price_of_risk(const MarketSpec& mkt, double t);

/// Log-Euler: P_{i+1} = P_i exp((b - a^2/2) dt + a dW) with b, a frozen at t_i.
SamplePath simulate_stock(const MarketSpec& mkt, const SamplePath& w);

/// Delta_t = e^{-\int_t^T r} a_t^{-1} P_t^{-1} p(T - t, w_t - \int_t^T lambda - K).
double delta_digital(const MarketSpec& mkt, double t, double w_t, double p_t, double eps);

struct HedgeOptions {
    std::size_t rebalance_every = 1;  // fine steps between rebalances
    double eps = 1e-4;                // near-expiry cutoff
    bool no_trading = false;          // diagnostic: Delta forced to 0
};

struct HedgeRun {
    SamplePath stock;     // P
    SamplePath wealth;    // X
    SamplePath delta;     // shares held over [t_i, t_{i+1}) (last value repeated)
    SamplePath discount;  // D
    double initial_capital = 0.0;  // X_0 = E~[D_T V_T] / D_0
    double payoff = 0.0;           // V_T
    double terminal_error = 0.0;   // D_T X_T - D_T V_T
};

/*!
 * Replication backtest on one path. Discounted wealth evolves by
 * left-endpoint sums of Delta a D P against W~ increments on the fine grid;
 * Delta is recomputed every `rebalance_every` steps and held in between.
 * Rebalance nodes past T - eps keep the previous holding.
 */
HedgeRun run_hedge(const MarketSpec& mkt, const SamplePath& w, const HedgeOptions& options);

struct HedgeRow {
    std::size_t frequency = 0;  // rebalances per horizon
    double l2_error = 0.0;
    double q95_error = 0.0;   // 95% quantile of |terminal_error|
    double mean_error = 0.0;  // P-mean of terminal_error
    double tilde_mean_error = 0.0;  // P~-mean via Bayes reweighting
    double tilde_mean_se = 0.0;
};

/// run_hedge over the ensemble for each rebalance frequency (each must
/// divide the number of grid steps).
std::vector<HedgeRow> hedge_report(const MarketSpec& mkt, const PathEnsemble& ensemble,
                                   const std::vector<std::size_t>& frequencies, double eps);

}  // namespace qcd
