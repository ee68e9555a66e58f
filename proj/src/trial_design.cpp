#include "combopred/trial_design.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "combopred/ida.hpp"
#include "combopred/stats.hpp"

namespace combopred {

namespace {

constexpr double kRootTol = 1e-12;

// Combination rate as a function of the unknown second rate.
double combo_rate(double r1, double x, double phi_prime) {
    return r1 + x - r1 * x - phi_prime * std::sqrt(r1 * (1.0 - r1) * x * (1.0 - x));
}

// d/dx of combo_rate; diverges at x = 0 and x = 1 when phi_prime != 0.
double combo_rate_deriv(double r1, double x, double phi_prime) {
    const double c = std::sqrt(r1 * (1.0 - r1));
    return (1.0 - r1) - phi_prime * c * (1.0 - 2.0 * x) / (2.0 * std::sqrt(x * (1.0 - x)));
}

double bisect(double lo, double hi, double f_lo, const auto& f) {
    for (int it = 0; it < 200 && hi - lo > kRootTol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = f(mid);
        if ((f_mid <= 0.0) == (f_lo <= 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

bool phi_feasible_for(double r1, double x, double phi_prime) {
    if (r1 == 0.0 || r1 == 1.0 || x == 0.0 || x == 1.0) return true;
    const auto [lo, hi] = feasible_phi_range(Rate{r1, {}}, Rate{x, {}});
    return phi_prime >= lo - 1e-9 && phi_prime <= hi + 1e-9;
}

} // namespace

ReverseOrrResult reverse_engineer_r2(const Rate& r, const Rate& r1, double phi_prime) {
    const double target = r.value;
    const double a = r1.value;
    if (!(target >= 0.0 && target <= 1.0) || !(a >= 0.0 && a <= 1.0)) {
        throw InvariantViolation("rates must be probabilities in [0,1]");
    }

    ReverseOrrResult res;
    if (phi_prime == 0.0 || a == 0.0 || a == 1.0) {
        if (a == 1.0) {
            if (std::fabs(target - 1.0) > 1e-9) {
                throw NoFeasibleSolution("r1 = 1 forces the combination rate to 1");
            }
            res.roots.push_back(0.0); // any r2 fits; report the smallest
            return res;
        }
        const double x = (target - a) / (1.0 - a);
        if (x < -1e-9 || x > 1.0 + 1e-9) {
            throw NoFeasibleSolution("no monotherapy rate in [0,1] reproduces the combination rate");
        }
        res.roots.push_back(std::clamp(x, 0.0, 1.0));
        return res;
    }

    const auto g = [&](double x) { return combo_rate(a, x, phi_prime) - target; };
    const auto gp = [&](double x) { return combo_rate_deriv(a, x, phi_prime); };

    // combo_rate is V-shaped (phi' > 0) or arch-shaped (phi' < 0) in x:
    // its derivative is strictly monotone with one interior sign change.
    const double eps = 1e-12;
    const double x_star = bisect(eps, 1.0 - eps, gp(eps), gp);

    const auto add_root_in = [&](double lo, double hi) {
        const double f_lo = g(lo);
        const double f_hi = g(hi);
        if (f_lo == 0.0) {
            res.roots.push_back(lo);
            return;
        }
        if (f_hi == 0.0) {
            res.roots.push_back(hi);
            return;
        }
        if ((f_lo < 0.0) == (f_hi < 0.0)) return;
        res.roots.push_back(bisect(lo, hi, f_lo, g));
    };
    add_root_in(0.0, x_star);
    add_root_in(x_star, 1.0);

    // drop roots whose correlation would be infeasible with the input rates
    res.roots.erase(std::remove_if(res.roots.begin(), res.roots.end(),
                                   [&](double x) { return !phi_feasible_for(a, x, phi_prime); }),
                    res.roots.end());
    std::sort(res.roots.begin(), res.roots.end());
    res.roots.erase(std::unique(res.roots.begin(), res.roots.end(),
                                [](double p, double q) { return std::fabs(p - q) < 1e-9; }),
                    res.roots.end());
    if (res.roots.empty()) {
        std::ostringstream msg;
        msg << "no monotherapy rate in [0,1] gives a combination rate of " << target
            << " with r1 = " << a << " and phi_prime = " << phi_prime;
        throw NoFeasibleSolution(msg.str());
    }
    return res;
}

SampleSizeResult sample_size_two_proportions(const DesignSpec& spec) {
    spec.validate();
    const double p1 = spec.p_control;
    const double p2 = spec.p_experimental;
    const double kappa = spec.allocation_ratio;
    const double delta = std::fabs(p2 - p1);
    const double z_a = normal_quantile(1.0 - spec.alpha_one_sided);
    const double z_b = normal_quantile(spec.power);
    const double p_bar = (p1 + kappa * p2) / (1.0 + kappa);
    const double null_term = z_a * std::sqrt(p_bar * (1.0 - p_bar) * (1.0 + 1.0 / kappa));
    const double alt_term = z_b * std::sqrt(p1 * (1.0 - p1) + p2 * (1.0 - p2) / kappa);
    const double n1_raw = (null_term + alt_term) * (null_term + alt_term) / (delta * delta);

    // Fleiss continuity correction on the unrounded size
    const double bump = 1.0 + std::sqrt(1.0 + 2.0 * (kappa + 1.0) / (kappa * n1_raw * delta));
    const double n1_cc_raw = n1_raw * bump * bump / 4.0;

    SampleSizeResult res;
    res.n_control = static_cast<long>(std::ceil(n1_raw - 1e-9));
    res.n_experimental = static_cast<long>(std::ceil(kappa * n1_raw - 1e-9));
    res.n_total = res.n_control + res.n_experimental;
    res.n_control_cc = static_cast<long>(std::ceil(n1_cc_raw - 1e-9));
    res.n_experimental_cc = static_cast<long>(std::ceil(kappa * n1_cc_raw - 1e-9));
    res.n_total_cc = res.n_control_cc + res.n_experimental_cc;
    return res;
}

double power_two_proportions(const DesignSpec& spec, long n_control) {
    spec.validate();
    if (n_control < 2) {
        throw InvariantViolation("n_control must be >= 2");
    }
    const double p1 = spec.p_control;
    const double p2 = spec.p_experimental;
    const double kappa = spec.allocation_ratio;
    const double delta = std::fabs(p2 - p1);
    const double z_a = normal_quantile(1.0 - spec.alpha_one_sided);
    const double p_bar = (p1 + kappa * p2) / (1.0 + kappa);
    const double null_sd = std::sqrt(p_bar * (1.0 - p_bar) * (1.0 + 1.0 / kappa));
    const double alt_sd = std::sqrt(p1 * (1.0 - p1) + p2 * (1.0 - p2) / kappa);
    const double z = (delta * std::sqrt(static_cast<double>(n_control)) - z_a * null_sd) / alt_sd;
    return normal_cdf(z);
}

} // namespace combopred
