#pragma once

// Test-only oracles: brute-force and simulation machinery kept independent
// of the library's prediction code paths so the two can disagree.

#include <map>
#include <utility>
#include <vector>

#include "combopred/rng.hpp"
#include "combopred/types.hpp"

namespace oracles {

// Exact joint table of two correlated Bernoulli variables.
struct BernoulliJoint {
    double p11 = 0, p10 = 0, p01 = 0, p00 = 0;

    BernoulliJoint(double p1, double p2, double phi);
    std::pair<int, int> draw(combopred::Philox& rng) const;
};

// Inverse-transform draw from a tabulated survival curve: the first grid
// time where S drops to or below u, +infinity when it never does. Satisfies
// P(T > t_j) = S(t_j) exactly at every grid point t_j.
double survival_inverse(const combopred::SurvivalCurve& s, double u);

// P(Z1 <= h, Z2 <= k) for a standard bivariate normal with correlation rho
// (1-D quadrature; oracle accuracy ~1e-8).
double bivariate_normal_cdf(double h, double k, double rho);

// Gaussian-copula correlation that makes the exceedance indicators at
// marginal survival levels (s1, s2) correlate at target_phi.
double calibrate_copula_rho(double s1, double s2, double target_phi);

double pearson_corr(const std::vector<double>& x, const std::vector<double>& y);
double spearman_corr(const std::vector<double>& x, const std::vector<double>& y);
// Pearson correlation after mapping each coordinate through rank-based
// normal scores (van der Waerden).
double normal_scores_corr(const std::vector<double>& x, const std::vector<double>& y);

// Kolmogorov distance between a sample and a reference sample's ECDF,
// evaluated on a regular grid.
double ks_distance_on_grid(const std::vector<double>& sample,
                           const std::vector<double>& reference,
                           double grid_min, double grid_max, double step);

// Exact distribution of the predicted combination waterfall for small
// discrete marginals under an independence copula (rho = 0): enumerates the
// product of the grid-quantized marginal PMFs through the combination rule.
std::map<double, double> enumerate_waterfall(const combopred::WaterfallSample& s1,
                                             const combopred::WaterfallSample& s2,
                                             const combopred::CopulaConfig& cfg);

// Random feasible inputs for the DoR prediction property tests.
struct RandomDorInstance {
    combopred::SurvivalCurve s1, s2;
    combopred::Rate r1, r2;
    double phi_prime = 0;
    double phi_dprime = 0;
};

RandomDorInstance random_dor_instance(combopred::Philox& rng, bool force_independent = false);

// Patient-level simulation of the combination DoR survival at fixed time
// points. X-pairs come from the response joint table; duration-exceedance
// pairs at each time point come from the joint table implied by phi_dprime
// at that point's marginal survivals (exact for any constant phi_dprime).
// Returns {S_hat, n_responders} per time point.
std::vector<std::pair<double, long>> simulate_dor_survival_by_tables(
    const RandomDorInstance& inst, const std::vector<double>& times,
    long n_patients, combopred::Philox& rng);

// Trajectory-level simulation: full (T1, T2) durations from the marginal
// curves coupled by a Gaussian copula on their uniforms (rho_gauss = 0
// reproduces phi_dprime = 0 exactly at every grid point). Returns the same
// shape as above.
std::vector<std::pair<double, long>> simulate_dor_survival_by_trajectories(
    const RandomDorInstance& inst, const std::vector<double>& times,
    long n_patients, double rho_gauss, combopred::Philox& rng);

} // namespace oracles
