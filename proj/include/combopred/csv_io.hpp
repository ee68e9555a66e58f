#pragma once

#include <string>
#include <vector>

#include "combopred/types.hpp"

namespace combopred {

// Result of loading a survival-curve CSV (time_months,survival_prob with an
// optional survival_se third column; '#' lines are comments).
struct SurvivalCsv {
    SurvivalCurve curve;
    std::vector<double> se;   // empty when the file has no survival_se column
    bool zero_inserted = false; // (0, 1) was missing and has been prepended
};

SurvivalCsv load_survival_csv(const std::string& path);

// Single-column CSV with header "pchg". Values below -100 are rejected at
// ingestion (they are physically impossible), not clamped.
WaterfallSample load_waterfall_csv(const std::string& path);

// Writes a text file atomically: content goes to a temp file in the same
// directory which is then renamed over the target, so a failed run never
// leaves a partial output behind.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace combopred
