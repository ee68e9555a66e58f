#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "combopred/errors.hpp"

namespace combopred {

// A response rate (probability), optionally with the arm size behind it so
// standard errors can be propagated.
struct Rate {
    double value = 0.0;
    std::optional<long> n;
};

Rate make_rate(double value, std::optional<long> n = std::nullopt);

// Correlation parameters of the prediction models:
//   phi_prime  - correlation between the two response indicators
//   phi_dprime - correlation between the two duration-exceedance indicators,
//                treated as constant in t (a per-grid-point override is
//                available on predict_dor_curve for research use)
//   phi_tumor  - correlation between the two drugs' cell-kill fractions
struct CorrelationSpec {
    double phi_prime = 0.0;
    double phi_dprime = 0.0;
    double phi_tumor = 0.0;

    void validate() const;
};

// Evidence from PDX screens puts phi_tumor in (0, 0.3); values outside that
// range are legal but worth a warning.
std::optional<std::string> phi_tumor_warning(const CorrelationSpec& corr);

// A tabulated nonincreasing survival function S(t) on a time grid (months).
// Step-function semantics (Kaplan-Meier convention): right-continuous,
// constant beyond the last grid point.
struct SurvivalCurve {
    std::vector<double> times;
    std::vector<double> probs;

    void validate() const;
    // S(t) by right-continuous step lookup; t beyond support returns the
    // last tabulated value.
    double at(double t) const;
};

// Conditional composition of combination responders: dual responders (r12),
// drug-1-only (r10), drug-2-only (r02). Sums to 1. `r` is the combination
// response rate they were normalized by.
struct ResponderMix {
    double r12 = 0.0;
    double r10 = 0.0;
    double r02 = 0.0;
    double r = 0.0;
};

// predict_dor_curve output: the curve plus the largest downward adjustment
// the monotonicity projection had to apply (0 when the raw evaluation was
// already nonincreasing).
struct PredictedCurve {
    SurvivalCurve curve;
    double max_monotonicity_adjustment = 0.0;
};

enum class MedianOrdering { combo_shorter, combo_equal, combo_longer };

struct MedianOrderingResult {
    MedianOrdering ordering = MedianOrdering::combo_equal;
    double s1_at_u2 = 0.0;    // S1 evaluated at the longer monotherapy median
    double threshold = 0.0;   // (1 - r2) / (2 - r2)
    bool extrapolated = false; // u2 lay beyond the support of s1
};

const char* to_string(MedianOrdering ordering);

// Best % change from baseline per patient; negative = shrinkage. Values are
// bounded below by -100 (you cannot lose more than the whole tumor).
struct WaterfallSample {
    std::vector<double> values;

    void validate() const;
};

enum class CombinationMode { proposed, palmer };

const char* to_string(CombinationMode mode);

// Sampling configuration for the waterfall prediction. The defaults mirror
// the reference procedure: 5000 draws on a 1-unit grid from -120 to 100,
// response cutoff -30 (% change; use -50 for lymphoma SPD data).
struct CopulaConfig {
    double rho = 0.25;
    int n_draws = 5000;
    double cutoff = -30.0;
    double grid_min = -120.0;
    double grid_max = 100.0;
    double grid_step = 1.0;
    CombinationMode mode = CombinationMode::proposed;
    std::uint64_t seed = 12345;
    // Use exact sample quantiles instead of grid-quantized ones.
    bool exact_quantiles = false;

    void validate() const;
};

// A predicted waterfall: values sorted decreasing over a patient-fraction
// index in [0,1], with an optional bootstrap band (and replicate mean).
struct PredictedBand {
    std::vector<double> index;
    std::vector<double> predicted;
    std::vector<double> lower;     // empty when no bootstrap was run
    std::vector<double> upper;
    std::vector<double> boot_mean;
    std::uint64_t seed = 0;

    bool has_band() const { return !lower.empty(); }
};

// Two-arm design on a binary endpoint, one-sided alternative.
struct DesignSpec {
    double p_control = 0.0;
    double p_experimental = 0.0;
    double alpha_one_sided = 0.05;
    double power = 0.80;
    double allocation_ratio = 1.0; // experimental : control

    void validate() const;
};

} // namespace combopred
