#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "combopred/stats.hpp"
#include "combopred/waterfall.hpp"

namespace oracles {

using combopred::Philox;

BernoulliJoint::BernoulliJoint(double p1, double p2, double phi) {
    p11 = p1 * p2 + phi * std::sqrt(p1 * (1 - p1) * p2 * (1 - p2));
    p10 = p1 - p11;
    p01 = p2 - p11;
    p00 = 1.0 - p1 - p2 + p11;
    for (double c : {p11, p10, p01, p00}) {
        if (c < -1e-12 || c > 1 + 1e-12) {
            throw std::invalid_argument("oracle: infeasible Bernoulli joint table");
        }
    }
}

std::pair<int, int> BernoulliJoint::draw(Philox& rng) const {
    const double u = rng.uniform();
    if (u < p11) return {1, 1};
    if (u < p11 + p10) return {1, 0};
    if (u < p11 + p10 + p01) return {0, 1};
    return {0, 0};
}

double survival_inverse(const combopred::SurvivalCurve& s, double u) {
    for (std::size_t i = 0; i < s.probs.size(); ++i) {
        if (s.probs[i] <= u) return s.times[i];
    }
    return std::numeric_limits<double>::infinity();
}

double bivariate_normal_cdf(double h, double k, double rho) {
    if (rho <= -1.0 + 1e-12) return std::max(0.0, combopred::normal_cdf(h) + combopred::normal_cdf(k) - 1.0);
    if (rho >= 1.0 - 1e-12) return combopred::normal_cdf(std::min(h, k));
    const double denom = std::sqrt(1.0 - rho * rho);
    const auto integrand = [&](double z) {
        const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * 3.141592653589793238462643);
        return pdf * combopred::normal_cdf((k - rho * z) / denom);
    };
    const double lo = -8.5;
    const double hi = std::min(h, 8.5);
    if (hi <= lo) return 0.0;
    const int n = 4000; // even
    const double dz = (hi - lo) / n;
    double sum = integrand(lo) + integrand(hi);
    for (int i = 1; i < n; ++i) {
        sum += integrand(lo + i * dz) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return sum * dz / 3.0;
}

double calibrate_copula_rho(double s1, double s2, double target_phi) {
    const double target_joint = s1 * s2 + target_phi * std::sqrt(s1 * (1 - s1) * s2 * (1 - s2));
    const double h = combopred::normal_quantile(s1);
    const double k = combopred::normal_quantile(s2);
    double lo = -0.9999, hi = 0.9999;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (bivariate_normal_cdf(h, k, mid) < target_joint) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double pearson_corr(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    return sxy / std::sqrt(sxx * syy);
}

namespace {

std::vector<double> ranks(const std::vector<double>& x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> r(x.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
        const double mid = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[order[k]] = mid;
        i = j + 1;
    }
    return r;
}

} // namespace

double spearman_corr(const std::vector<double>& x, const std::vector<double>& y) {
    return pearson_corr(ranks(x), ranks(y));
}

double normal_scores_corr(const std::vector<double>& x, const std::vector<double>& y) {
    const auto scores = [](const std::vector<double>& v) {
        auto r = ranks(v);
        const double n = static_cast<double>(v.size());
        for (auto& ri : r) ri = combopred::normal_quantile(ri / (n + 1.0));
        return r;
    };
    return pearson_corr(scores(x), scores(y));
}

double ks_distance_on_grid(const std::vector<double>& sample,
                           const std::vector<double>& reference,
                           double grid_min, double grid_max, double step) {
    std::vector<double> a = sample, b = reference;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double worst = 0.0;
    for (double x = grid_min; x <= grid_max + 1e-9; x += step) {
        const double fa = static_cast<double>(std::upper_bound(a.begin(), a.end(), x) - a.begin()) /
                          static_cast<double>(a.size());
        const double fb = static_cast<double>(std::upper_bound(b.begin(), b.end(), x) - b.begin()) /
                          static_cast<double>(b.size());
        worst = std::max(worst, std::fabs(fa - fb));
    }
    return worst;
}

namespace {

// Grid-quantized PMF of one sample: value -> probability.
std::map<double, double> quantized_pmf(const combopred::WaterfallSample& s,
                                       const combopred::CopulaConfig& cfg) {
    std::vector<double> vals = s.values;
    std::sort(vals.begin(), vals.end());
    std::map<double, double> pmf;
    const double n = static_cast<double>(vals.size());
    std::size_t i = 0;
    double cum_prev = 0.0;
    while (i < vals.size()) {
        std::size_t j = i;
        while (j + 1 < vals.size() && vals[j + 1] == vals[i]) ++j;
        const double cum = static_cast<double>(j + 1) / n;
        // the quantile map sends every u in (cum_prev, cum] to the smallest
        // grid point at or above this sample value
        const double q = combopred::empirical_quantile(s, cum, cfg);
        pmf[q] += cum - cum_prev;
        cum_prev = cum;
        i = j + 1;
    }
    return pmf;
}

} // namespace

std::map<double, double> enumerate_waterfall(const combopred::WaterfallSample& s1,
                                             const combopred::WaterfallSample& s2,
                                             const combopred::CopulaConfig& cfg) {
    if (cfg.rho != 0.0) {
        throw std::invalid_argument("oracle enumeration requires rho = 0 (independence copula)");
    }
    const auto pmf1 = quantized_pmf(s1, cfg);
    const auto pmf2 = quantized_pmf(s2, cfg);
    std::map<double, double> out;
    for (const auto& [v1, p1] : pmf1) {
        for (const auto& [v2, p2] : pmf2) {
            const double v = combopred::combine_pair(v1, v2, cfg.cutoff, cfg.rho, cfg.mode);
            out[v] += p1 * p2;
        }
    }
    return out;
}

RandomDorInstance random_dor_instance(Philox& rng, bool force_independent) {
    RandomDorInstance inst;
    inst.r1 = combopred::Rate{0.25 + 0.6 * rng.uniform(), {}};
    inst.r2 = combopred::Rate{0.25 + 0.6 * rng.uniform(), {}};

    const auto make_curve = [&](double target_tail) {
        combopred::SurvivalCurve c;
        const int n_pts = 21;
        c.times.resize(n_pts);
        c.probs.resize(n_pts);
        const double horizon = 30.0;
        // roughly exponential decay toward the target tail, with noise
        const double rate = -std::log(target_tail) / horizon;
        double prev = 1.0;
        for (int i = 0; i < n_pts; ++i) {
            c.times[i] = horizon * i / (n_pts - 1);
            if (i == 0) {
                c.probs[i] = 1.0;
                continue;
            }
            double v = std::exp(-rate * c.times[i]) * (0.9 + 0.2 * rng.uniform());
            v = std::min(v, prev);
            v = std::max(v, 0.02);
            c.probs[i] = v;
            prev = v;
        }
        return c;
    };
    inst.s1 = make_curve(0.05 + 0.25 * rng.uniform());
    inst.s2 = make_curve(0.05 + 0.25 * rng.uniform());

    if (force_independent) {
        inst.phi_prime = 0.0;
        inst.phi_dprime = 0.0;
        return inst;
    }

    // phi_prime uniform well inside its feasible interval
    {
        const double a = inst.r1.value, b = inst.r2.value;
        const double denom = std::sqrt(a * (1 - a) * b * (1 - b));
        const double lo = (std::max(0.0, a + b - 1.0) - a * b) / denom;
        const double hi = (std::min(a, b) - a * b) / denom;
        inst.phi_prime = 0.9 * (lo + (hi - lo) * rng.uniform());
    }
    // phi_dprime must stay feasible at every grid point of both curves
    {
        double lo = -1.0, hi = 1.0;
        for (std::size_t i = 1; i < inst.s1.probs.size(); ++i) {
            for (std::size_t j = 1; j < inst.s2.probs.size(); ++j) {
                const double a = inst.s1.probs[i], b = inst.s2.probs[j];
                if (a <= 0 || a >= 1 || b <= 0 || b >= 1) continue;
                const double denom = std::sqrt(a * (1 - a) * b * (1 - b));
                lo = std::max(lo, (std::max(0.0, a + b - 1.0) - a * b) / denom);
                hi = std::min(hi, (std::min(a, b) - a * b) / denom);
            }
        }
        inst.phi_dprime = 0.9 * (lo + (hi - lo) * rng.uniform());
    }
    return inst;
}

std::vector<std::pair<double, long>> simulate_dor_survival_by_tables(
    const RandomDorInstance& inst, const std::vector<double>& times,
    long n_patients, Philox& rng) {
    const BernoulliJoint x_table(inst.r1.value, inst.r2.value, inst.phi_prime);
    std::vector<std::uint8_t> x1(static_cast<std::size_t>(n_patients));
    std::vector<std::uint8_t> x2(static_cast<std::size_t>(n_patients));
    long n_resp = 0;
    for (long p = 0; p < n_patients; ++p) {
        const auto [a, b] = x_table.draw(rng);
        x1[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(a);
        x2[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(b);
        if (a || b) ++n_resp;
    }
    std::vector<std::pair<double, long>> out;
    out.reserve(times.size());
    for (double t : times) {
        const double v1 = inst.s1.at(t);
        const double v2 = inst.s2.at(t);
        const BernoulliJoint i_table(v1, v2, inst.phi_dprime);
        long survived = 0;
        for (long p = 0; p < n_patients; ++p) {
            const auto [i1, i2] = i_table.draw(rng);
            const auto idx = static_cast<std::size_t>(p);
            if ((x1[idx] && i1) || (x2[idx] && i2)) ++survived;
        }
        out.emplace_back(static_cast<double>(survived) / static_cast<double>(n_resp), n_resp);
    }
    return out;
}

std::vector<std::pair<double, long>> simulate_dor_survival_by_trajectories(
    const RandomDorInstance& inst, const std::vector<double>& times,
    long n_patients, double rho_gauss, Philox& rng) {
    const BernoulliJoint x_table(inst.r1.value, inst.r2.value, inst.phi_prime);
    const double tail = std::sqrt(std::max(0.0, 1.0 - rho_gauss * rho_gauss));
    std::vector<long> survived(times.size(), 0);
    long n_resp = 0;
    for (long p = 0; p < n_patients; ++p) {
        const auto [a, b] = x_table.draw(rng);
        const double z1 = rng.normal();
        const double z2 = rho_gauss * z1 + tail * rng.normal();
        const double t1 = survival_inverse(inst.s1, combopred::normal_cdf(z1));
        const double t2 = survival_inverse(inst.s2, combopred::normal_cdf(z2));
        if (a || b) ++n_resp;
        for (std::size_t k = 0; k < times.size(); ++k) {
            if ((a && t1 > times[k]) || (b && t2 > times[k])) ++survived[k];
        }
    }
    std::vector<std::pair<double, long>> out;
    out.reserve(times.size());
    for (long s : survived) {
        out.emplace_back(static_cast<double>(s) / static_cast<double>(n_resp), n_resp);
    }
    return out;
}

} // namespace oracles
