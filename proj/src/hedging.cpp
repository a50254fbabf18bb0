#include "qcd/hedging.hpp"

#include <cmath>
#include <string>

#include "qcd/errors.hpp"
#include "qcd/heat_kernel.hpp"
#include "qcd/ito_girsanov.hpp"
#include "qcd/parallel.hpp"
#include "qcd/stats.hpp"

namespace qcd {

void MarketSpec::validate() const {
    if (!(horizon > 0.0)) {
        throw InvalidArgument("market horizon must be positive");
    }
    if (!(initial_price > 0.0)) {
        throw InvalidArgument("initial stock price must be positive");
    }
    const double a0 = volatility(0.0);
    const double a1 = volatility(horizon);
    // linear a vanishes on [0, T] iff the endpoint values differ in sign or touch 0
    if (a0 == 0.0 || a1 == 0.0 || (a0 > 0.0) != (a1 > 0.0)) {
        throw InvalidArgument("volatility must stay away from 0 on [0, T]");
    }
}

DeterministicFn MarketSpec::market_price_of_risk() const {
    if (volatility.slope() != 0.0) {
        throw Unsupported("market price of risk needs constant volatility to stay linear");
    }
    const double a = volatility.intercept();
    if (a == 0.0) {
        throw DomainError("volatility must be nonzero");
    }
    const double c0 = (drift.intercept() - rate.intercept()) / a;
    const double c1 = (drift.slope() - rate.slope()) / a;
    if (c1 == 0.0) {
        return DeterministicFn::constant(c0);
    }
    return DeterministicFn::linear(c0, c1);
}

double MarketSpec::discount(double t) const { return std::exp(-rate.integral(0.0, t)); }

double market_price_of_risk(const MarketSpec& mkt, double t) {
    const double a = mkt.volatility(t);
    if (a == 0.0) {
        throw DomainError("market price of risk undefined where volatility is 0");
    }
    return (mkt.drift(t) - mkt.rate(t)) / a;
}

SamplePath simulate_stock(const MarketSpec& mkt, const SamplePath& w) {
    mkt.validate();
    const TimeGrid& grid = w.grid();
    const double dt = grid.dt();
    std::vector<double> p(w.size());
    p[0] = mkt.initial_price;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        const double t = grid.node(i);
        const double a = mkt.volatility(t);
        const double b = mkt.drift(t);
        p[i + 1] = p[i] * std::exp((b - 0.5 * a * a) * dt + a * (w[i + 1] - w[i]));
    }
    return SamplePath(grid, std::move(p), "P");
}

double delta_digital(const MarketSpec& mkt, double t, double w_t, double p_t, double eps) {
    if (!(eps > 0.0) || !(eps < mkt.horizon)) {
        throw InvalidArgument("cutoff eps must lie in (0, T)");
    }
    if (t > mkt.horizon - eps) {
        throw CutoffError("digital delta evaluated inside the near-expiry cutoff");
    }
    if (!(p_t > 0.0)) {
        throw DomainError("stock price must be positive");
    }
    const double a = mkt.volatility(t);
    if (a == 0.0) {
        throw DomainError("volatility must be nonzero");
    }
    const DeterministicFn lambda = mkt.market_price_of_risk();
    const double kernel =
        heat::density(mkt.horizon - t, w_t - lambda.integral(t, mkt.horizon) - mkt.strike);
    return std::exp(-mkt.rate.integral(t, mkt.horizon)) / a / p_t * kernel;
}

HedgeRun run_hedge(const MarketSpec& mkt, const SamplePath& w, const HedgeOptions& options) {
    mkt.validate();
    const TimeGrid& grid = w.grid();
    if (std::abs(grid.horizon() - mkt.horizon) > 1e-12 * mkt.horizon) {
        throw InvalidArgument("path horizon differs from the market horizon");
    }
    if (options.rebalance_every < 1 || grid.steps() % options.rebalance_every != 0) {
        throw InvalidArgument("rebalance interval must divide the number of grid steps");
    }
    const std::size_t n = grid.steps();
    const DeterministicFn lambda = mkt.market_price_of_risk();
    const SamplePath stock = simulate_stock(mkt, w);
    const SamplePath w_tilde = shift_path(w, lambda);

    std::vector<double> discount(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        discount[i] = mkt.discount(grid.node(i));
    }

    const double total_drift = lambda.integral(0.0, mkt.horizon);
    const double discounted_price =
        discount[n] *
        heat::normal_cdf((w[0] - total_drift - mkt.strike) / std::sqrt(mkt.horizon));
    const double initial_capital = discounted_price / discount[0];

    std::vector<double> delta(n + 1, 0.0);
    std::vector<double> wealth(n + 1);
    double discounted_wealth = discount[0] * initial_capital;
    wealth[0] = initial_capital;
    double holding = 0.0;
    const double cutoff = mkt.horizon - options.eps;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = grid.node(i);
        if (!options.no_trading && i % options.rebalance_every == 0 && t <= cutoff) {
            holding = delta_digital(mkt, t, w[i], stock[i], options.eps);
        }
        delta[i] = holding;
        discounted_wealth +=
            holding * mkt.volatility(t) * discount[i] * stock[i] * (w_tilde[i + 1] - w_tilde[i]);
        wealth[i + 1] = discounted_wealth / discount[i + 1];
    }
    delta[n] = holding;

    HedgeRun run{stock,
                 SamplePath(grid, std::move(wealth), "X"),
                 SamplePath(grid, std::move(delta), "Delta"),
                 SamplePath(grid, discount, "D"),
                 initial_capital,
                 w.terminal() >= mkt.strike ? 1.0 : 0.0,
                 0.0};
    run.terminal_error = discounted_wealth - discount[n] * run.payoff;
    return run;
}

std::vector<HedgeRow> hedge_report(const MarketSpec& mkt, const PathEnsemble& ensemble,
                                   const std::vector<std::size_t>& frequencies, double eps) {
    mkt.validate();
    const std::size_t steps = ensemble.grid().steps();
    for (std::size_t f : frequencies) {
        if (f == 0 || steps % f != 0) {
            throw InvalidArgument("rebalance frequency " + std::to_string(f) +
                                  " must divide the step count " + std::to_string(steps));
        }
    }
    const DeterministicFn lambda = mkt.market_price_of_risk();
    const std::size_t m = ensemble.size();
    const std::size_t nf = frequencies.size();
    std::vector<std::vector<double>> errors(nf, std::vector<double>(m));
    std::vector<double> densities(m);
    parallel_for(m, [&](std::size_t p) {
        const SamplePath w = ensemble.path(p);
        densities[p] = stochastic_exponential(lambda, w).terminal();
        for (std::size_t j = 0; j < nf; ++j) {
            HedgeOptions options{steps / frequencies[j], eps, false};
            errors[j][p] = run_hedge(mkt, w, options).terminal_error;
        }
    });

    std::vector<HedgeRow> rows;
    for (std::size_t j = 0; j < nf; ++j) {
        std::vector<double> abs_err(m);
        for (std::size_t p = 0; p < m; ++p) {
            abs_err[p] = std::abs(errors[j][p]);
        }
        const MeanSE tilde = bayes_reweight(errors[j], densities);
        rows.push_back({frequencies[j], rms(errors[j]), quantile(abs_err, 0.95),
                        mean_se(errors[j]).mean, tilde.mean, tilde.se});
    }
    return rows;
}

}  // namespace qcd
