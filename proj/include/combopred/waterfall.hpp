#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "combopred/types.hpp"

namespace combopred {

// Empirical CDF of a waterfall sample evaluated on the config grid, with
// generalized-inverse lookup: quantile(u) is the smallest grid value whose
// ECDF reaches u, clamped to >= -100.
class GridEcdf {
public:
    GridEcdf(const WaterfallSample& sample, const CopulaConfig& cfg);

    double quantile(double u) const;

private:
    std::vector<double> grid_;
    std::vector<double> cdf_;
    std::vector<double> sorted_; // raw sample, for exact-quantile mode
    bool exact_ = false;
};

// Grid-quantized inverse-CDF evaluation of one sample (convenience wrapper
// around GridEcdf for a single u).
double empirical_quantile(const WaterfallSample& sample, double u, const CopulaConfig& cfg);

// n_draws pairs of best-%-change values whose marginals follow the two
// sample ECDFs and whose dependence is a Gaussian copula with correlation
// cfg.rho. Deterministic for a fixed cfg.seed.
std::vector<std::pair<double, double>> gaussian_copula_pairs(const WaterfallSample& s1,
                                                             const WaterfallSample& s2,
                                                             const CopulaConfig& cfg);

// Combination best-%-change for one simulated patient. Palmer mode is the
// pure best-single-drug rule min(p1, p2). Proposed mode applies the
// cell-level combination rule to dual responders (both strictly below the
// cutoff) and the max rule otherwise. Result never drops below -100.
double combine_pair(double p1_chg, double p2_chg, double cutoff, double rho,
                    CombinationMode mode);

// Predicted combination waterfall: copula draws mapped through
// combine_pair, sorted decreasing over a patient-fraction index.
PredictedBand predict_waterfall(const WaterfallSample& s1, const WaterfallSample& s2,
                                const CopulaConfig& cfg);

// Adds a bootstrap confidence band: nboot replicates resample the raw
// monotherapy arms with replacement and rerun the prediction; the band is
// the per-index 5th/95th percentile across replicates (plus the replicate
// mean). Replicate k draws from the stream derived from (seed, k), so
// serial and parallel runs produce identical bands.
PredictedBand bootstrap_band(const WaterfallSample& s1, const WaterfallSample& s2,
                             const CopulaConfig& cfg, int nboot,
                             std::optional<std::size_t> resample_size = std::nullopt,
                             int threads = 1);

// Fraction of values at or beyond a tumor-reduction threshold (in percent,
// e.g. 75 means % change <= -75).
Rate deep_response_rate(const WaterfallSample& sample, double threshold_reduction);
Rate deep_response_rate(const PredictedBand& band, double threshold_reduction);

// Largest vertical distance between the ECDFs of two samples, taken over a
// regular evaluation grid.
double max_cdf_distance(const std::vector<double>& a, const std::vector<double>& b,
                        double grid_min, double grid_max, double step);

// Fraction of band indices at which the observed sample's waterfall curve
// (linear interpolation of its sorted values over [0,1]) lies inside
// [lower, upper]. Requires a band.
double band_coverage(const PredictedBand& band, const WaterfallSample& observed);

} // namespace combopred
