#include "qcd/clark_ocone.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qcd/errors.hpp"
#include "qcd/heat_kernel.hpp"
#include "qcd/parallel.hpp"
#include "qcd/stats.hpp"

namespace qcd {

namespace {

void require_cutoff(const PayoffSpec& spec, double t, double eps) {
    if (!(eps > 0.0) || !(eps < spec.horizon)) {
        throw InvalidArgument("cutoff eps must lie in (0, T)");
    }
    if (t > spec.horizon - eps) {
        throw CutoffError("integrand evaluated inside the near-expiry cutoff (T - eps, T]");
    }
    if (t < 0.0) {
        throw DomainError("integrand needs t >= 0");
    }
}

const Indicator& require_indicator(const PayoffSpec& spec) {
    const auto* ind = std::get_if<Indicator>(&spec.payoff);
    if (!ind) {
        throw Unsupported("measure-change integrand is only available for the indicator payoff");
    }
    return *ind;
}

template <class Eval>
IntegrandPath frozen_integrand(const PayoffSpec& spec, const SamplePath& w, double eps,
                               Eval&& eval) {
    const TimeGrid& grid = w.grid();
    if (std::abs(grid.horizon() - spec.horizon) > 1e-12 * spec.horizon) {
        throw InvalidArgument("path horizon differs from the payoff horizon");
    }
    std::vector<double> values(grid.steps());
    const double cutoff = spec.horizon - eps;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double t = grid.node(i);
        if (t <= cutoff) {
            values[i] = eval(t, w[i]);
        } else if (i == 0) {
            throw CutoffError("cutoff eps leaves no admissible grid node");
        } else {
            values[i] = values[i - 1];
        }
    }
    return make_integrand(grid, std::move(values));
}

RepresentationReport collect(const PayoffSpec& spec, const PathEnsemble& ensemble, double eps,
                             const std::function<double(const SamplePath&)>& rebuild,
                             const std::function<double(const SamplePath&)>& weight) {
    const std::size_t m = ensemble.size();
    RepresentationReport report;
    report.steps = ensemble.grid().steps();
    report.paths = m;
    report.eps = eps;
    report.payoffs.resize(m);
    report.reconstructions.resize(m);
    std::vector<double> weights(m);
    parallel_for(m, [&](std::size_t p) {
        const SamplePath w = ensemble.path(p);
        report.payoffs[p] = evaluate(spec.payoff, w.terminal());
        report.reconstructions[p] = rebuild(w);
        weights[p] = weight(w);
    });

    std::vector<double> errors(m);
    for (std::size_t p = 0; p < m; ++p) {
        errors[p] = report.payoffs[p] - report.reconstructions[p];
        report.max_error = std::max(report.max_error, std::abs(errors[p]));
    }
    report.l2_error = rms(errors);
    const MeanSE ef = bayes_reweight(report.payoffs, weights);
    report.e_f = ef.mean;
    report.e_f_se = ef.se;
    const MeanSE rec = bayes_reweight(report.reconstructions, weights);
    report.reconstruction_mean = rec.mean;
    report.reconstruction_se = rec.se;
    return report;
}

}  // namespace

double expected_payoff(const PayoffSpec& spec) {
    return cond_exp_heat(spec.payoff, 0.0, spec.start, spec.horizon);
}

double integrand(const PayoffSpec& spec, double t, double w_t, double eps) {
    require_cutoff(spec, t, eps);
    if (const auto* ind = std::get_if<Indicator>(&spec.payoff)) {
        return heat::density(spec.horizon - t, w_t - ind->strike);
    }
    // smooth payoffs: d/dx E[f(x + W_{T-t})] = E[f'(x + W_{T-t})]
    return cond_exp_heat(derivative(spec.payoff), t, w_t, spec.horizon);
}

IntegrandPath integrand_path(const PayoffSpec& spec, const SamplePath& w, double eps) {
    require_cutoff(spec, 0.0, eps);
    if (is_indicator(spec.payoff)) {
        return frozen_integrand(spec, w, eps,
                                [&](double t, double x) { return integrand(spec, t, x, eps); });
    }
    const Payoff slope = derivative(spec.payoff);
    return frozen_integrand(spec, w, eps, [&](double t, double x) {
        return cond_exp_heat(slope, t, x, spec.horizon);
    });
}

double reconstruct(const PayoffSpec& spec, const SamplePath& w, double eps) {
    const IntegrandPath x = integrand_path(spec, w, eps);
    return expected_payoff(spec) + ito_integral(x, w).terminal();
}

double expected_payoff_com(const PayoffSpec& spec, const DeterministicFn& lambda) {
    const Indicator& ind = require_indicator(spec);
    const double drift = lambda.integral(0.0, spec.horizon);
    return heat::normal_cdf((spec.start - drift - ind.strike) / std::sqrt(spec.horizon));
}

double integrand_com(const PayoffSpec& spec, const DeterministicFn& lambda, double t,
                     double w_t, double eps) {
    const Indicator& ind = require_indicator(spec);
    require_cutoff(spec, t, eps);
    const double remaining_drift = lambda.integral(t, spec.horizon);
    return heat::density(spec.horizon - t, w_t - remaining_drift - ind.strike);
}

IntegrandPath integrand_path_com(const PayoffSpec& spec, const DeterministicFn& lambda,
                                 const SamplePath& w, double eps) {
    require_indicator(spec);
    require_cutoff(spec, 0.0, eps);
    return frozen_integrand(spec, w, eps, [&](double t, double x) {
        return integrand_com(spec, lambda, t, x, eps);
    });
}

double reconstruct_com(const PayoffSpec& spec, const DeterministicFn& lambda,
                       const SamplePath& w, double eps) {
    const IntegrandPath x = integrand_path_com(spec, lambda, w, eps);
    const SamplePath w_tilde = shift_path(w, lambda);
    return expected_payoff_com(spec, lambda) + ito_integral(x, w_tilde).terminal();
}

RepresentationReport verify_ensemble(const PayoffSpec& spec, const PathEnsemble& ensemble,
                                     double eps) {
    if (ensemble.start() != spec.start) {
        throw InvalidArgument("ensemble start differs from the payoff start point");
    }
    RepresentationReport report = collect(
        spec, ensemble, eps, [&](const SamplePath& w) { return reconstruct(spec, w, eps); },
        [](const SamplePath&) { return 1.0; });
    report.e_f_closed_form = expected_payoff(spec);
    return report;
}

RepresentationReport verify_ensemble_com(const PayoffSpec& spec, const DeterministicFn& lambda,
                                         const PathEnsemble& ensemble, double eps) {
    if (ensemble.start() != spec.start) {
        throw InvalidArgument("ensemble start differs from the payoff start point");
    }
    require_indicator(spec);
    RepresentationReport report = collect(
        spec, ensemble, eps,
        [&](const SamplePath& w) { return reconstruct_com(spec, lambda, w, eps); },
        [&](const SamplePath& w) { return stochastic_exponential(lambda, w).terminal(); });
    report.e_f_closed_form = expected_payoff_com(spec, lambda);
    report.measure_change = true;
    return report;
}

}  // namespace qcd
