#pragma once

#include <cstddef>
#include <vector>

#include "qcd/deterministic_fn.hpp"
#include "qcd/grid_paths.hpp"
#include "qcd/ito_girsanov.hpp"
#include "qcd/payoff.hpp"

namespace qcd {

/// Default near-expiry cutoff as a fraction of the horizon.
inline constexpr double kDefaultCutoffFraction = 1e-4;

inline double default_cutoff(double horizon) { return kDefaultCutoffFraction * horizon; }

/// E[F] in closed form (indicator, polynomial) or by quadrature.
double expected_payoff(const PayoffSpec& spec);

/*!
 * QCD Clark-Ocone integrand D_{W_t} E[F | F_t] at W_t = w_t:
 * p(T - t, w_t - K) for the indicator, the heat extension of f' otherwise.
 * Throws CutoffError for t > T - eps.
 */
double integrand(const PayoffSpec& spec, double t, double w_t, double eps);

/// Integrand along a path. Nodes past T - eps repeat the value at the last
/// node not past the cutoff.
IntegrandPath integrand_path(const PayoffSpec& spec, const SamplePath& w, double eps);

/// E[F] + \int_0^T integrand dW on the path grid.
double reconstruct(const PayoffSpec& spec, const SamplePath& w, double eps);

/// Exact E~[F] for the indicator under the measure making W~ = W + \int lambda
/// a Brownian motion: Phi((x - \int_0^T lambda - K) / sqrt T).
double expected_payoff_com(const PayoffSpec& spec, const DeterministicFn& lambda);

/// p(T - t, w_t - \int_t^T lambda - K); indicator payoff only.
double integrand_com(const PayoffSpec& spec, const DeterministicFn& lambda, double t,
                     double w_t, double eps);

IntegrandPath integrand_path_com(const PayoffSpec& spec, const DeterministicFn& lambda,
                                 const SamplePath& w, double eps);

/// E~[F] + \int_0^T integrand_com dW~ with W~ = shift_path(w, lambda).
double reconstruct_com(const PayoffSpec& spec, const DeterministicFn& lambda,
                       const SamplePath& w, double eps);

struct RepresentationReport {
    double e_f = 0.0;              // MC estimate of E F (E~ F under a measure change)
    double e_f_se = 0.0;
    double e_f_closed_form = 0.0;
    double reconstruction_mean = 0.0;
    double reconstruction_se = 0.0;
    double l2_error = 0.0;         // sqrt(mean (F - reconstruction)^2)
    double max_error = 0.0;
    std::size_t steps = 0;
    std::size_t paths = 0;
    double eps = 0.0;
    bool measure_change = false;
    std::vector<double> payoffs;
    std::vector<double> reconstructions;
};

/// Reconstructs F on every ensemble path.
RepresentationReport verify_ensemble(const PayoffSpec& spec, const PathEnsemble& ensemble,
                                     double eps);

/// Same under a measure change; the E~F estimate is Bayes-reweighted by Z_T.
RepresentationReport verify_ensemble_com(const PayoffSpec& spec, const DeterministicFn& lambda,
                                         const PathEnsemble& ensemble, double eps);

}  // namespace qcd
