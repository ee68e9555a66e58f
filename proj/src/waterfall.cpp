#include "combopred/waterfall.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "combopred/rng.hpp"
#include "combopred/stats.hpp"

namespace combopred {

namespace {

// Stream ids: 0 drives the point-estimate prediction, bootstrap replicate k
// (1-based) uses stream k.
constexpr std::uint64_t kPointEstimateStream = 0;

std::vector<double> sorted_values(const WaterfallSample& sample) {
    std::vector<double> v = sample.values;
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<double> draw_predictions(const GridEcdf& e1, const GridEcdf& e2,
                                     const CopulaConfig& cfg, Philox& rng) {
    const double rho = cfg.rho;
    const double tail = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    std::vector<double> vals(static_cast<std::size_t>(cfg.n_draws));
    for (auto& v : vals) {
        const double z1 = rng.normal();
        const double z2 = rho * z1 + tail * rng.normal();
        const double p1 = e1.quantile(normal_cdf(z1));
        const double p2 = e2.quantile(normal_cdf(z2));
        v = combine_pair(p1, p2, cfg.cutoff, rho, cfg.mode);
    }
    std::sort(vals.begin(), vals.end(), std::greater<double>());
    return vals;
}

std::vector<double> fraction_index(std::size_t n) {
    std::vector<double> idx(n);
    if (n == 1) {
        idx[0] = 0.0;
        return idx;
    }
    for (std::size_t i = 0; i < n; ++i) {
        idx[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return idx;
}

WaterfallSample resample(const std::vector<double>& values, std::size_t size, Philox& rng) {
    WaterfallSample out;
    out.values.resize(size);
    for (auto& v : out.values) {
        v = values[rng.index(values.size())];
    }
    return out;
}

} // namespace

GridEcdf::GridEcdf(const WaterfallSample& sample, const CopulaConfig& cfg) {
    sample.validate();
    cfg.validate();
    exact_ = cfg.exact_quantiles;
    sorted_ = sorted_values(sample);
    if (exact_) return;
    const auto n_steps = static_cast<std::size_t>(
        std::floor((cfg.grid_max - cfg.grid_min) / cfg.grid_step + 1e-9));
    grid_.resize(n_steps + 1);
    cdf_.resize(n_steps + 1);
    const double n = static_cast<double>(sorted_.size());
    for (std::size_t i = 0; i <= n_steps; ++i) {
        grid_[i] = cfg.grid_min + static_cast<double>(i) * cfg.grid_step;
        const auto count = std::upper_bound(sorted_.begin(), sorted_.end(), grid_[i]) -
                           sorted_.begin();
        cdf_[i] = static_cast<double>(count) / n;
    }
}

double GridEcdf::quantile(double u) const {
    if (exact_) {
        // smallest sample value whose ECDF reaches u
        const double n = static_cast<double>(sorted_.size());
        auto k = static_cast<std::size_t>(std::ceil(u * n));
        k = std::clamp<std::size_t>(k, 1, sorted_.size());
        return std::max(sorted_[k - 1], -100.0);
    }
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it; // u above the grid's reach: top of the grid
    const auto i = static_cast<std::size_t>(it - cdf_.begin());
    return std::max(grid_[i], -100.0);
}

double empirical_quantile(const WaterfallSample& sample, double u, const CopulaConfig& cfg) {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw InvariantViolation("quantile level u must lie in [0,1]");
    }
    return GridEcdf(sample, cfg).quantile(u);
}

std::vector<std::pair<double, double>> gaussian_copula_pairs(const WaterfallSample& s1,
                                                             const WaterfallSample& s2,
                                                             const CopulaConfig& cfg) {
    const GridEcdf e1(s1, cfg);
    const GridEcdf e2(s2, cfg);
    Philox rng(cfg.seed, kPointEstimateStream);
    const double tail = std::sqrt(std::max(0.0, 1.0 - cfg.rho * cfg.rho));
    std::vector<std::pair<double, double>> pairs(static_cast<std::size_t>(cfg.n_draws));
    for (auto& pr : pairs) {
        const double z1 = rng.normal();
        const double z2 = cfg.rho * z1 + tail * rng.normal();
        pr.first = e1.quantile(normal_cdf(z1));
        pr.second = e2.quantile(normal_cdf(z2));
    }
    return pairs;
}

double combine_pair(double p1_chg, double p2_chg, double cutoff, double rho,
                    CombinationMode mode) {
    const double best_single = std::min(p1_chg, p2_chg);
    if (mode == CombinationMode::palmer) {
        return std::max(best_single, -100.0);
    }
    if (p1_chg < cutoff && p2_chg < cutoff) {
        const double q1 = std::fabs(p1_chg) / 100.0;
        const double q2 = std::fabs(p2_chg) / 100.0;
        const double kill = q1 + q2 - q1 * q2 -
                            rho * std::sqrt(q1 * (1.0 - q1) * q2 * (1.0 - q2));
        return std::max(-100.0 * kill, -100.0);
    }
    return std::max(best_single, -100.0);
}

PredictedBand predict_waterfall(const WaterfallSample& s1, const WaterfallSample& s2,
                                const CopulaConfig& cfg) {
    const GridEcdf e1(s1, cfg);
    const GridEcdf e2(s2, cfg);
    Philox rng(cfg.seed, kPointEstimateStream);
    PredictedBand band;
    band.seed = cfg.seed;
    band.predicted = draw_predictions(e1, e2, cfg, rng);
    band.index = fraction_index(band.predicted.size());
    return band;
}

PredictedBand bootstrap_band(const WaterfallSample& s1, const WaterfallSample& s2,
                             const CopulaConfig& cfg, int nboot,
                             std::optional<std::size_t> resample_size, int threads) {
    if (nboot < 100) {
        throw InvariantViolation("nboot must be >= 100");
    }
    PredictedBand band = predict_waterfall(s1, s2, cfg);
    const auto n = band.predicted.size();
    const auto n_rep = static_cast<std::size_t>(nboot);
    const std::vector<double> raw1 = s1.values;
    const std::vector<double> raw2 = s2.values;
    const std::size_t size1 = resample_size.value_or(raw1.size());
    const std::size_t size2 = resample_size.value_or(raw2.size());
    if (size1 == 0 || size2 == 0) {
        throw EmptySample("bootstrap resample size must be positive");
    }

    std::vector<double> reps(n_rep * n);
    auto run_replicate = [&](std::size_t k) {
        Philox rng(cfg.seed, k + 1);
        const WaterfallSample b1 = resample(raw1, size1, rng);
        const WaterfallSample b2 = resample(raw2, size2, rng);
        const GridEcdf e1(b1, cfg);
        const GridEcdf e2(b2, cfg);
        const std::vector<double> vals = draw_predictions(e1, e2, cfg, rng);
        std::copy(vals.begin(), vals.end(), reps.begin() + static_cast<std::ptrdiff_t>(k * n));
    };

    const int n_threads = std::max(1, threads);
    if (n_threads == 1) {
        for (std::size_t k = 0; k < n_rep; ++k) run_replicate(k);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t k = static_cast<std::size_t>(t); k < n_rep;
                     k += static_cast<std::size_t>(n_threads)) {
                    run_replicate(k);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    band.lower.resize(n);
    band.upper.resize(n);
    band.boot_mean.resize(n);
    std::vector<double> column(n_rep);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t k = 0; k < n_rep; ++k) {
            column[k] = reps[k * n + i];
            sum += column[k];
        }
        std::sort(column.begin(), column.end());
        // band edges include the point estimate
        band.lower[i] = std::min(quantile_type7(column, 0.05), band.predicted[i]);
        band.upper[i] = std::max(quantile_type7(column, 0.95), band.predicted[i]);
        band.boot_mean[i] = sum / static_cast<double>(n_rep);
    }
    return band;
}

Rate deep_response_rate(const WaterfallSample& sample, double threshold_reduction) {
    sample.validate();
    if (!(threshold_reduction > 0.0 && threshold_reduction <= 100.0)) {
        throw OutOfRange("deep-response threshold must lie in (0, 100]");
    }
    const auto count = std::count_if(sample.values.begin(), sample.values.end(),
                                     [&](double v) { return v <= -threshold_reduction; });
    return Rate{static_cast<double>(count) / static_cast<double>(sample.values.size()),
                static_cast<long>(sample.values.size())};
}

Rate deep_response_rate(const PredictedBand& band, double threshold_reduction) {
    WaterfallSample s{band.predicted};
    return deep_response_rate(s, threshold_reduction);
}

double max_cdf_distance(const std::vector<double>& a, const std::vector<double>& b,
                        double grid_min, double grid_max, double step) {
    if (a.empty() || b.empty()) {
        throw EmptySample("max_cdf_distance needs nonempty samples");
    }
    std::vector<double> sa = a;
    std::vector<double> sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    double worst = 0.0;
    for (double x = grid_min; x <= grid_max + 1e-9; x += step) {
        const double fa = static_cast<double>(std::upper_bound(sa.begin(), sa.end(), x) -
                                              sa.begin()) / static_cast<double>(sa.size());
        const double fb = static_cast<double>(std::upper_bound(sb.begin(), sb.end(), x) -
                                              sb.begin()) / static_cast<double>(sb.size());
        worst = std::max(worst, std::fabs(fa - fb));
    }
    return worst;
}

double band_coverage(const PredictedBand& band, const WaterfallSample& observed) {
    if (!band.has_band()) {
        throw InvariantViolation("band_coverage needs a bootstrap band");
    }
    observed.validate();
    std::vector<double> obs = observed.values;
    std::sort(obs.begin(), obs.end(), std::greater<double>());
    const auto n = obs.size();
    std::size_t covered = 0;
    for (std::size_t i = 0; i < band.index.size(); ++i) {
        const double u = band.index[i];
        double v;
        if (n == 1) {
            v = obs[0];
        } else {
            const double h = u * static_cast<double>(n - 1);
            const auto lo = std::min(static_cast<std::size_t>(std::floor(h)), n - 2);
            const double g = h - static_cast<double>(lo);
            v = obs[lo] + g * (obs[lo + 1] - obs[lo]);
        }
        if (v >= band.lower[i] - 1e-12 && v <= band.upper[i] + 1e-12) ++covered;
    }
    return static_cast<double>(covered) / static_cast<double>(band.index.size());
}

} // namespace combopred
