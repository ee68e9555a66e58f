#pragma once

#include <vector>

namespace combopred {

// Standard normal CDF.
double normal_cdf(double z);

// Standard normal quantile, Wichura's AS 241 (double precision).
// p must be in (0,1).
double normal_quantile(double p);

// Quantile of a sample using R's default interpolation (type 7).
// `sorted` must be ascending; p in [0,1].
double quantile_type7(const std::vector<double>& sorted, double p);

} // namespace combopred
