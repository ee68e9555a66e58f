#include "combopred/ida.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace combopred {

namespace {

constexpr double kCellTol = 1e-12;

double bernoulli_sd_product(double p1, double p2) {
    return std::sqrt(p1 * (1.0 - p1) * p2 * (1.0 - p2));
}

// P(A=1, B=1) for Bernoulli margins (p1, p2) with correlation phi.
double joint_prob(double p1, double p2, double phi) {
    return p1 * p2 + phi * bernoulli_sd_product(p1, p2);
}

bool cells_feasible(double p1, double p2, double p11) {
    const double cells[4] = {p11, p1 - p11, p2 - p11, 1.0 - p1 - p2 + p11};
    for (double c : cells) {
        if (c < -kCellTol || c > 1.0 + kCellTol) return false;
    }
    return true;
}

void require_probability(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream msg;
        msg << name << " must be a probability in [0,1], got " << v;
        throw InvariantViolation(msg.str());
    }
}

} // namespace

std::pair<double, double> feasible_phi_range(const Rate& r1, const Rate& r2) {
    require_probability(r1.value, "r1");
    require_probability(r2.value, "r2");
    const double a = r1.value;
    const double b = r2.value;
    if (a == 0.0 || a == 1.0 || b == 0.0 || b == 1.0) {
        return {0.0, 0.0}; // range collapses for a degenerate margin
    }
    const double denom = bernoulli_sd_product(a, b);
    const double p11_lo = std::max(0.0, a + b - 1.0);
    const double p11_hi = std::min(a, b);
    double lo = (p11_lo - a * b) / denom;
    double hi = (p11_hi - a * b) / denom;
    lo = std::max(lo, -1.0);
    hi = std::min(hi, 1.0);
    return {lo, hi};
}

Rate predict_orr(const Rate& r1, const Rate& r2, double phi_prime) {
    require_probability(r1.value, "r1");
    require_probability(r2.value, "r2");
    const double p11 = joint_prob(r1.value, r2.value, phi_prime);
    if (!cells_feasible(r1.value, r2.value, p11)) {
        std::ostringstream msg;
        msg << "phi_prime = " << phi_prime << " implies a joint cell probability outside [0,1] "
            << "for rates (" << r1.value << ", " << r2.value << ")";
        throw InfeasibleCorrelation(msg.str());
    }
    const double r = std::clamp(r1.value + r2.value - p11, 0.0, 1.0);
    return Rate{r, std::nullopt};
}

double predicted_orr_se(const Rate& r1, const Rate& r2, double phi_prime) {
    if (!r1.n || !r2.n) {
        throw InvariantViolation("predicted_orr_se needs arm sizes on both rates");
    }
    const double a = r1.value;
    const double b = r2.value;
    double d1 = 1.0 - b;
    double d2 = 1.0 - a;
    if (phi_prime != 0.0) {
        if (a <= 0.0 || a >= 1.0 || b <= 0.0 || b >= 1.0) {
            throw DegenerateMargin("rate standard error undefined at a degenerate margin with phi_prime != 0");
        }
        d1 -= phi_prime * (1.0 - 2.0 * a) * std::sqrt(b * (1.0 - b)) / (2.0 * std::sqrt(a * (1.0 - a)));
        d2 -= phi_prime * (1.0 - 2.0 * b) * std::sqrt(a * (1.0 - a)) / (2.0 * std::sqrt(b * (1.0 - b)));
    }
    const double var = d1 * d1 * a * (1.0 - a) / static_cast<double>(*r1.n) +
                       d2 * d2 * b * (1.0 - b) / static_cast<double>(*r2.n);
    return std::sqrt(var);
}

ResponderMix responder_mix(const Rate& r1, const Rate& r2, double phi_prime) {
    const double r = predict_orr(r1, r2, phi_prime).value;
    if (r <= 0.0) {
        throw NoResponders("combination response rate is zero; responder mix undefined");
    }
    const double p11 = joint_prob(r1.value, r2.value, phi_prime);
    ResponderMix mix;
    mix.r = r;
    mix.r12 = p11 / r;
    mix.r10 = (r1.value - p11) / r;
    mix.r02 = (r2.value - p11) / r;
    return mix;
}

double phi_of_t(double phi_prime, double phi_dprime,
                const Rate& r1, const Rate& r2, double s1, double s2) {
    require_probability(s1, "s1");
    require_probability(s2, "s2");
    const double m1 = r1.value * s1;
    const double m2 = r2.value * s2;
    if (m1 <= 0.0 || m1 >= 1.0 || m2 <= 0.0 || m2 >= 1.0) {
        throw DegenerateMargin("phi_of_t undefined when r_i * s_i is 0 or 1");
    }
    const double p11 = joint_prob(r1.value, r2.value, phi_prime);
    const double q11 = joint_prob(s1, s2, phi_dprime);
    return (p11 * q11 - m1 * m2) / bernoulli_sd_product(m1, m2);
}

std::vector<double> merge_time_grids(const SurvivalCurve& s1, const SurvivalCurve& s2) {
    std::vector<double> grid;
    grid.reserve(s1.times.size() + s2.times.size());
    grid.insert(grid.end(), s1.times.begin(), s1.times.end());
    grid.insert(grid.end(), s2.times.begin(), s2.times.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

PredictedCurve predict_dor_curve(const SurvivalCurve& s1, const SurvivalCurve& s2,
                                 const Rate& r1, const Rate& r2,
                                 const CorrelationSpec& corr,
                                 const std::vector<double>& phi_dprime_by_time) {
    s1.validate();
    s2.validate();
    corr.validate();
    const double p11 = joint_prob(r1.value, r2.value, corr.phi_prime);
    if (!cells_feasible(r1.value, r2.value, p11)) {
        throw InfeasibleCorrelation("phi_prime infeasible for the given response rates");
    }
    const double r = r1.value + r2.value - p11;
    if (r <= 0.0) {
        throw NoResponders("combination response rate is zero; DoR curve undefined");
    }

    const std::vector<double> grid = merge_time_grids(s1, s2);
    if (!phi_dprime_by_time.empty() && phi_dprime_by_time.size() != grid.size()) {
        std::ostringstream msg;
        msg << "phi_dprime override has " << phi_dprime_by_time.size()
            << " entries but the merged time grid has " << grid.size();
        throw GridMismatch(msg.str());
    }

    PredictedCurve out;
    out.curve.times = grid;
    out.curve.probs.resize(grid.size());
    double running_min = 1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v1 = s1.at(grid[i]);
        const double v2 = s2.at(grid[i]);
        const double pdd = phi_dprime_by_time.empty() ? corr.phi_dprime : phi_dprime_by_time[i];
        const double b = bernoulli_sd_product(v1, v2);
        double q11;
        if (b > 0.0) {
            q11 = v1 * v2 + pdd * b;
            if (!cells_feasible(v1, v2, q11)) {
                std::ostringstream msg;
                msg << "phi_dprime = " << pdd << " infeasible at t = " << grid[i]
                    << " (S1 = " << v1 << ", S2 = " << v2 << ")";
                throw InfeasibleCorrelation(msg.str());
            }
        } else {
            q11 = v1 * v2; // a degenerate margin pins the joint probability
        }
        const double raw = std::clamp((r1.value * v1 + r2.value * v2 - p11 * q11) / r, 0.0, 1.0);
        if (raw > running_min) {
            out.max_monotonicity_adjustment = std::max(out.max_monotonicity_adjustment,
                                                       raw - running_min);
        } else {
            running_min = raw;
        }
        out.curve.probs[i] = running_min;
    }
    out.curve.validate();
    return out;
}

double dor_variance(double s1, double s2, const Rate& r1, const Rate& r2,
                    double phi, double sigma_s1, double sigma_s2,
                    double phi_prime) {
    require_probability(s1, "s1");
    require_probability(s2, "s2");
    if (sigma_s1 < 0.0 || sigma_s2 < 0.0) {
        throw InvariantViolation("survival standard errors must be nonnegative");
    }
    if (sigma_s1 == 0.0 && sigma_s2 == 0.0) return 0.0;
    const double r = predict_orr(r1, r2, phi_prime).value;
    if (r <= 0.0) {
        throw NoResponders("combination response rate is zero; variance undefined");
    }
    const double m1 = r1.value * s1;
    const double m2 = r2.value * s2;
    double d1 = 1.0 - m2;
    double d2 = 1.0 - m1;
    if (phi != 0.0) {
        const double big_b = m1 * m2 * (1.0 - m1) * (1.0 - m2);
        if (big_b <= 0.0) {
            throw DegenerateMargin("dor_variance: B = 0 with phi != 0");
        }
        const double a1 = m2 * (1.0 - m2) * (1.0 - 2.0 * m1);
        const double a2 = m1 * (1.0 - m1) * (1.0 - 2.0 * m2);
        const double half_inv_sqrt_b = 0.5 / std::sqrt(big_b);
        d1 -= phi * a1 * half_inv_sqrt_b;
        d2 -= phi * a2 * half_inv_sqrt_b;
    }
    const double num = r1.value * r1.value * d1 * d1 * sigma_s1 * sigma_s1 +
                       r2.value * r2.value * d2 * d2 * sigma_s2 * sigma_s2;
    return num / (r * r);
}

std::optional<double> median_of_curve(const SurvivalCurve& s) {
    s.validate();
    for (std::size_t i = 0; i < s.probs.size(); ++i) {
        if (s.probs[i] <= 0.5) {
            if (i == 0) return s.times[0];
            const double p0 = s.probs[i - 1];
            const double p1 = s.probs[i];
            const double t0 = s.times[i - 1];
            const double t1 = s.times[i];
            return t0 + (p0 - 0.5) * (t1 - t0) / (p0 - p1);
        }
    }
    return std::nullopt; // median not reached
}

MedianOrderingResult classify_median_ordering(const SurvivalCurve& s1,
                                              const Rate& r2, double u2) {
    s1.validate();
    require_probability(r2.value, "r2");
    if (u2 < 0.0) {
        throw OutOfRange("u2 must be nonnegative");
    }
    MedianOrderingResult res;
    res.s1_at_u2 = s1.at(u2);
    res.threshold = (1.0 - r2.value) / (2.0 - r2.value);
    res.extrapolated = u2 > s1.times.back();
    const double diff = res.s1_at_u2 - res.threshold;
    if (std::fabs(diff) <= 1e-12) {
        res.ordering = MedianOrdering::combo_equal;
    } else if (diff < 0.0) {
        res.ordering = MedianOrdering::combo_shorter;
    } else {
        res.ordering = MedianOrdering::combo_longer;
    }
    return res;
}

} // namespace combopred
