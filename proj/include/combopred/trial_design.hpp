#pragma once

#include <vector>

#include "combopred/types.hpp"

namespace combopred {

// Monotherapy rates solving the combination-rate equation for a given
// combination rate r and known first-drug rate r1. With phi_prime = 0 the
// closed form (r - r1) / (1 - r1) applies; otherwise the equation can have
// up to two roots in [0,1], and every feasible root is reported (two roots
// mean the data cannot identify r2 on its own).
struct ReverseOrrResult {
    std::vector<double> roots; // ascending; size 1 or 2
    bool unique() const { return roots.size() == 1; }
};

ReverseOrrResult reverse_engineer_r2(const Rate& r, const Rate& r1, double phi_prime);

// Per-arm and total sample size for a one-sided two-proportion comparison,
// normal approximation with a pooled-variance null term and an unpooled
// alternative term, ceiling per arm. The continuity-corrected size (Fleiss)
// is always reported alongside.
struct SampleSizeResult {
    long n_control = 0;
    long n_experimental = 0;
    long n_total = 0;
    long n_control_cc = 0;
    long n_experimental_cc = 0;
    long n_total_cc = 0;
};

SampleSizeResult sample_size_two_proportions(const DesignSpec& spec);

// Achieved power of the same test at a given control-arm size
// (experimental arm = allocation_ratio * n_control).
double power_two_proportions(const DesignSpec& spec, long n_control);

} // namespace combopred
