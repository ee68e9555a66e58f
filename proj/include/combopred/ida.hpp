#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "combopred/types.hpp"

namespace combopred {

// Closed interval of response correlations phi_prime for which all four
// joint Bernoulli cell probabilities of (X1, X2) stay in [0,1]. Collapses
// to [0,0] when either rate is degenerate (0 or 1).
std::pair<double, double> feasible_phi_range(const Rate& r1, const Rate& r2);

// Combination response rate:
//   r = r1 + r2 - r1*r2 - phi_prime * sqrt(r1(1-r1) r2(1-r2))
// Throws InfeasibleCorrelation if phi_prime implies a joint cell
// probability outside [0,1].
Rate predict_orr(const Rate& r1, const Rate& r2, double phi_prime);

// Delta-method standard error of the predicted combination rate from the
// binomial uncertainty of the two observed monotherapy rates. Requires arm
// sizes on both rates.
double predicted_orr_se(const Rate& r1, const Rate& r2, double phi_prime);

// Conditional composition of combination responders (dual / drug-1-only /
// drug-2-only). Throws NoResponders when the predicted rate is zero.
ResponderMix responder_mix(const Rate& r1, const Rate& r2, double phi_prime);

// Correlation of the indicators I{X1*T1 > t} and I{X2*T2 > t} implied by a
// response correlation phi_prime and a duration correlation phi_dprime,
// at a time point where the monotherapy DoR survivals are s1 and s2.
// Throws DegenerateMargin when r1*s1 or r2*s2 is 0 or 1.
double phi_of_t(double phi_prime, double phi_dprime,
                const Rate& r1, const Rate& r2, double s1, double s2);

// Predicted DoR survival curve of the combination on the merged time grid
// of the two inputs (right-continuous step interpolation). A running-minimum
// projection enforces monotonicity; the largest adjustment is reported.
// `phi_dprime_by_time`, when nonempty, overrides corr.phi_dprime per merged
// grid point and must match the merged grid length (GridMismatch otherwise).
PredictedCurve predict_dor_curve(const SurvivalCurve& s1, const SurvivalCurve& s2,
                                 const Rate& r1, const Rate& r2,
                                 const CorrelationSpec& corr,
                                 const std::vector<double>& phi_dprime_by_time = {});

// Pointwise variance of the predicted DoR survival at one grid point, by
// first-order propagation of the monotherapy survival standard errors
// sigma_s1 / sigma_s2 through the prediction formula. `phi` is the
// duration-level indicator correlation at that point; `phi_prime` enters
// only through the combination rate in the denominator.
double dor_variance(double s1, double s2, const Rate& r1, const Rate& r2,
                    double phi, double sigma_s1, double sigma_s2,
                    double phi_prime = 0.0);

// Interpolated median: earliest time with S(t) <= 1/2, linear within the
// bracketing step. nullopt = median not reached.
std::optional<double> median_of_curve(const SurvivalCurve& s);

// Predicts whether the combination median DoR is shorter than, equal to or
// longer than the longer monotherapy median u2, by comparing S1(u2) with
// (1 - r2) / (2 - r2). Independence (phi' = phi'' = 0) assumed. When u2
// lies beyond the support of s1, S1 extrapolates as a constant and the
// result is flagged.
MedianOrderingResult classify_median_ordering(const SurvivalCurve& s1,
                                              const Rate& r2, double u2);

// Merged time grid of two curves (sorted union).
std::vector<double> merge_time_grids(const SurvivalCurve& s1, const SurvivalCurve& s2);

} // namespace combopred
