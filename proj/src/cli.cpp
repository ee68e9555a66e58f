#include "combopred/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "combopred/csv_io.hpp"
#include "combopred/ida.hpp"
#include "combopred/stats.hpp"
#include "combopred/svg.hpp"
#include "combopred/trial_design.hpp"
#include "combopred/waterfall.hpp"

#ifndef COMBOPRED_FIXTURE_DIR
#define COMBOPRED_FIXTURE_DIR "fixtures"
#endif

namespace combopred {

namespace {

int category_exit_code(const std::string& category) {
    if (category == "parse") return 3;
    if (category == "invariant") return 4;
    if (category == "infeasible") return 5;
    return 1;
}

std::string fmt(double v) {
    std::ostringstream s;
    s << std::setprecision(10) << v;
    return s.str();
}

void kv(std::ostream& out, const std::string& key, const std::string& value) {
    out << key << ',' << value << '\n';
}

void kv(std::ostream& out, const std::string& key, double value) {
    kv(out, key, fmt(value));
}

// Binomial approximation of the pointwise survival standard error when the
// file carries none: sqrt(S(1-S)/n).
std::vector<double> default_se(const SurvivalCurve& curve, std::optional<long> n) {
    std::vector<double> se(curve.probs.size(), 0.0);
    if (!n) return se;
    for (std::size_t i = 0; i < se.size(); ++i) {
        se[i] = std::sqrt(curve.probs[i] * (1.0 - curve.probs[i]) / static_cast<double>(*n));
    }
    return se;
}

double se_at(const SurvivalCurve& curve, const std::vector<double>& se, double t) {
    auto it = std::upper_bound(curve.times.begin(), curve.times.end(), t);
    const auto i = static_cast<std::size_t>(it - curve.times.begin());
    if (i == 0) return 0.0;
    return se[std::min(i - 1, se.size() - 1)];
}

// ---------------------------------------------------------------- commands

struct PredictOrrArgs {
    double r1 = 0, r2 = 0, phi_prime = 0, ci_level = 0.95;
    std::optional<long> n1, n2;
};

void cmd_predict_orr(const PredictOrrArgs& a, std::ostream& out) {
    const Rate r1 = make_rate(a.r1, a.n1);
    const Rate r2 = make_rate(a.r2, a.n2);
    const Rate r = predict_orr(r1, r2, a.phi_prime);
    kv(out, "r1", r1.value);
    kv(out, "r2", r2.value);
    kv(out, "phi_prime", a.phi_prime);
    kv(out, "r", r.value);
    if (a.n1 && a.n2) {
        const double se = predicted_orr_se(r1, r2, a.phi_prime);
        const double z = normal_quantile(0.5 + a.ci_level / 2.0);
        kv(out, "se", se);
        kv(out, "ci_level", a.ci_level);
        kv(out, "ci_lower", std::max(0.0, r.value - z * se));
        kv(out, "ci_upper", std::min(1.0, r.value + z * se));
    }
}

struct PredictDorArgs {
    std::string s1_path, s2_path, out_path;
    double r1 = 0, r2 = 0, phi_prime = 0, phi_dprime = 0;
    std::optional<long> n1, n2;
};

void cmd_predict_dor(const PredictDorArgs& a, std::ostream& out, std::ostream& err) {
    const SurvivalCsv f1 = load_survival_csv(a.s1_path);
    const SurvivalCsv f2 = load_survival_csv(a.s2_path);
    if (f1.zero_inserted) err << "note: inserted (0,1) at the start of " << a.s1_path << '\n';
    if (f2.zero_inserted) err << "note: inserted (0,1) at the start of " << a.s2_path << '\n';
    const Rate r1 = make_rate(a.r1, a.n1);
    const Rate r2 = make_rate(a.r2, a.n2);
    CorrelationSpec corr;
    corr.phi_prime = a.phi_prime;
    corr.phi_dprime = a.phi_dprime;

    const PredictedCurve pred = predict_dor_curve(f1.curve, f2.curve, r1, r2, corr);
    const std::vector<double> se1 = f1.se.empty() ? default_se(f1.curve, a.n1) : f1.se;
    const std::vector<double> se2 = f2.se.empty() ? default_se(f2.curve, a.n2) : f2.se;

    std::ostringstream csv;
    csv << "time_months,survival_prob,variance\n";
    for (std::size_t i = 0; i < pred.curve.times.size(); ++i) {
        const double t = pred.curve.times[i];
        const double v1 = f1.curve.at(t);
        const double v2 = f2.curve.at(t);
        const double m1 = r1.value * v1;
        const double m2 = r2.value * v2;
        // the correlation correction is undefined at a degenerate margin;
        // there the phi term vanishes from the prediction anyway
        double phi_t = 0.0;
        if (m1 > 0.0 && m1 < 1.0 && m2 > 0.0 && m2 < 1.0) {
            phi_t = phi_of_t(a.phi_prime, a.phi_dprime, r1, r2, v1, v2);
        }
        const double var = dor_variance(v1, v2, r1, r2, phi_t,
                                        se_at(f1.curve, se1, t), se_at(f2.curve, se2, t),
                                        a.phi_prime);
        csv << fmt(t) << ',' << fmt(pred.curve.probs[i]) << ',' << fmt(var) << '\n';
    }
    write_file_atomic(a.out_path, csv.str());

    const auto median = median_of_curve(pred.curve);
    kv(out, "median_months", median ? fmt(*median) : "not_reached");
    kv(out, "max_monotonicity_adjustment", pred.max_monotonicity_adjustment);
    kv(out, "out", a.out_path);
}

struct PredictWaterfallArgs {
    std::string s1_path, s2_path, out_path, svg_path;
    std::string label1 = "drug 1", label2 = "drug 2";
    CopulaConfig cfg;
    int nboot = 2000;
    int threads = 0;
    std::optional<long> resample_size;
    std::string mode = "proposed";
};

void cmd_predict_waterfall(const PredictWaterfallArgs& a, std::ostream& out, std::ostream& err) {
    const WaterfallSample s1 = load_waterfall_csv(a.s1_path);
    const WaterfallSample s2 = load_waterfall_csv(a.s2_path);
    CopulaConfig cfg = a.cfg;
    cfg.mode = a.mode == "palmer" ? CombinationMode::palmer : CombinationMode::proposed;
    cfg.validate();
    CorrelationSpec cell_corr;
    cell_corr.phi_tumor = cfg.rho;
    if (const auto warning = phi_tumor_warning(cell_corr)) {
        err << "note: " << *warning << '\n';
    }

    const int threads = a.threads > 0 ? a.threads
                                      : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::optional<std::size_t> rs;
    if (a.resample_size) rs = static_cast<std::size_t>(*a.resample_size);
    const PredictedBand band = a.nboot > 0
        ? bootstrap_band(s1, s2, cfg, a.nboot, rs, threads)
        : predict_waterfall(s1, s2, cfg);

    std::ostringstream csv;
    csv << "# seed=" << cfg.seed << '\n';
    csv << "# mode=" << to_string(cfg.mode) << " rho=" << fmt(cfg.rho)
        << " cutoff=" << fmt(cfg.cutoff) << " n_draws=" << cfg.n_draws
        << " nboot=" << a.nboot << '\n';
    csv << "index,predicted,lower,upper\n";
    for (std::size_t i = 0; i < band.index.size(); ++i) {
        const double lo = band.has_band() ? band.lower[i] : band.predicted[i];
        const double hi = band.has_band() ? band.upper[i] : band.predicted[i];
        csv << fmt(band.index[i]) << ',' << fmt(band.predicted[i]) << ','
            << fmt(lo) << ',' << fmt(hi) << '\n';
    }
    write_file_atomic(a.out_path, csv.str());
    if (!a.svg_path.empty()) {
        write_file_atomic(a.svg_path,
                          waterfall_svg(band, "Predicted combination waterfall: " + a.label1 +
                                                  " + " + a.label2));
    }

    const auto resp = std::count_if(band.predicted.begin(), band.predicted.end(),
                                    [&](double v) { return v < cfg.cutoff; });
    kv(out, "seed", fmt(static_cast<double>(cfg.seed)));
    kv(out, "mode", to_string(cfg.mode));
    kv(out, "response_rate",
       static_cast<double>(resp) / static_cast<double>(band.predicted.size()));
    kv(out, "out", a.out_path);
}

struct ReverseOrrArgs {
    double r = 0, r1 = 0, phi_prime = 0;
};

void cmd_reverse_orr(const ReverseOrrArgs& a, std::ostream& out) {
    const ReverseOrrResult res = reverse_engineer_r2(make_rate(a.r), make_rate(a.r1), a.phi_prime);
    kv(out, "r2", res.roots.front());
    if (!res.unique()) {
        kv(out, "r2_alt", res.roots.back());
        kv(out, "non_unique", "true");
    }
}

struct SampleSizeArgs {
    DesignSpec spec;
    bool continuity = false;
};

void cmd_sample_size(const SampleSizeArgs& a, std::ostream& out) {
    const SampleSizeResult res = sample_size_two_proportions(a.spec);
    kv(out, "n_control", fmt(static_cast<double>(res.n_control)));
    kv(out, "n_experimental", fmt(static_cast<double>(res.n_experimental)));
    kv(out, "n_total", fmt(static_cast<double>(res.n_total)));
    kv(out, "achieved_power", power_two_proportions(a.spec, res.n_control));
    if (a.continuity) {
        kv(out, "n_control_cc", fmt(static_cast<double>(res.n_control_cc)));
        kv(out, "n_experimental_cc", fmt(static_cast<double>(res.n_experimental_cc)));
        kv(out, "n_total_cc", fmt(static_cast<double>(res.n_total_cc)));
    }
}

struct DeepResponseArgs {
    std::string pchg_path, band_path;
    double threshold = 75.0;
};

void cmd_deep_response(const DeepResponseArgs& a, std::ostream& out) {
    Rate rate;
    if (!a.pchg_path.empty()) {
        rate = deep_response_rate(load_waterfall_csv(a.pchg_path), a.threshold);
    } else {
        // band CSV: use the predicted column
        const auto rows = [&] {
            std::ifstream in(a.band_path);
            if (!in) throw ParseError(a.band_path + ": cannot open file");
            std::string line;
            bool have_header = false;
            WaterfallSample s;
            while (std::getline(in, line)) {
                if (line.empty() || line[0] == '#') continue;
                if (!have_header) {
                    if (line.rfind("index,predicted", 0) != 0) {
                        throw ParseError(a.band_path + ": not a predicted-band CSV");
                    }
                    have_header = true;
                    continue;
                }
                const auto c1 = line.find(',');
                const auto c2 = line.find(',', c1 + 1);
                if (c1 == std::string::npos) throw ParseError(a.band_path + ": malformed row");
                try {
                    s.values.push_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
                } catch (const std::exception&) {
                    throw ParseError(a.band_path + ": non-numeric predicted value in '" + line + "'");
                }
            }
            return s;
        }();
        rate = deep_response_rate(rows, a.threshold);
    }
    kv(out, "threshold_reduction", a.threshold);
    kv(out, "rate", rate.value);
    kv(out, "n", fmt(static_cast<double>(rate.n.value_or(0))));
}

// ---------------------------------------------------------------- reproduce

struct ReproduceArgs {
    std::string fixtures = COMBOPRED_FIXTURE_DIR;
    int nboot = 2000;
    std::uint64_t seed = 12345;
    int threads = 0;
};

struct CheckTable {
    std::ostream& out;
    bool all_pass = true;

    void row(const std::string& name, bool pass, const std::string& detail) {
        out << (pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(34) << name
            << ' ' << detail << '\n';
        all_pass = all_pass && pass;
    }
};

int cmd_reproduce(const ReproduceArgs& a, std::ostream& out) {
    const std::string fx = a.fixtures;
    CheckTable table{out};
    out << "reproduce: fixtures=" << fx << " seed=" << a.seed << " nboot=" << a.nboot << "\n\n";

    // response-rate predictions
    {
        const double r = predict_orr(make_rate(0.372), make_rate(0.148), 0.0).value;
        table.row("orr_keynote062", std::fabs(r - 0.4649) <= 5e-4,
                  "r = " + fmt(r) + " (target 0.4649 +/- 0.0005)");
        const double r2 = predict_orr(make_rate(0.190), make_rate(0.437), 0.0).value;
        table.row("orr_checkmate067", std::fabs(r2 - 0.5440) <= 5e-4,
                  "r = " + fmt(r2) + " (target 0.5440 +/- 0.0005)");
    }

    // duration of response, Keynote-062
    const SurvivalCsv chemo = load_survival_csv(fx + "/keynote062_chemo_dor.csv");
    const SurvivalCsv pembro = load_survival_csv(fx + "/keynote062_pembro_dor.csv");
    {
        const auto m1 = median_of_curve(chemo.curve);
        table.row("chemo_median_dor", m1 && std::fabs(*m1 - 6.8) <= 0.05,
                  "median = " + (m1 ? fmt(*m1) : "not reached") + " (published 6.8)");
        const auto m2 = median_of_curve(pembro.curve);
        table.row("pembro_median_dor", m2 && std::fabs(*m2 - 13.7) <= 0.05,
                  "median = " + (m2 ? fmt(*m2) : "not reached") + " (published 13.7)");

        const auto ord = classify_median_ordering(chemo.curve, make_rate(0.148), 13.7);
        const bool thr_ok = std::fabs(ord.threshold - 0.460) <= 1e-3;
        const bool cls_ok = ord.ordering == MedianOrdering::combo_shorter &&
                            std::fabs(ord.s1_at_u2 - 0.18) <= 0.01;
        table.row("median_ordering_keynote062", thr_ok && cls_ok,
                  "S1(13.7) = " + fmt(ord.s1_at_u2) + ", threshold = " + fmt(ord.threshold) +
                      ", verdict = " + to_string(ord.ordering));

        const PredictedCurve pred = predict_dor_curve(chemo.curve, pembro.curve,
                                                      make_rate(0.372), make_rate(0.148), {});
        const auto med = median_of_curve(pred.curve);
        table.row("dor_median_keynote062", med && *med >= 7.0 && *med <= 9.0,
                  "predicted median = " + (med ? fmt(*med) : "not reached") +
                      " (target [7,9], published ~8)");
    }

    // Checkmate-067 waterfall
    {
        const WaterfallSample ipi = load_waterfall_csv(fx + "/checkmate067_ipi_waterfall.csv");
        const WaterfallSample nivo = load_waterfall_csv(fx + "/checkmate067_nivo_waterfall.csv");
        const WaterfallSample combo = load_waterfall_csv(fx + "/checkmate067_combo_waterfall.csv");
        CopulaConfig cfg;
        cfg.rho = 0.25;
        cfg.seed = a.seed;
        const int threads = a.threads > 0
            ? a.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
        const PredictedBand band = bootstrap_band(ipi, nivo, cfg, a.nboot, std::nullopt, threads);
        const double dist = max_cdf_distance(band.predicted, combo.values, -120.0, 100.0, 1.0);
        table.row("waterfall_checkmate067_fit", dist <= 0.10,
                  "max CDF distance = " + fmt(dist) + " (target <= 0.10)");
        const double cov = band_coverage(band, combo);
        table.row("waterfall_checkmate067_band", cov >= 0.90,
                  "observed inside band at " + fmt(cov * 100.0) + "% of indices (target >= 90%)");
    }

    // Hodgkin lymphoma: proposed vs best-single-drug tails
    {
        const WaterfallSample hn = load_waterfall_csv(fx + "/hodgkin_nivo_waterfall.csv");
        const WaterfallSample bv = load_waterfall_csv(fx + "/hodgkin_bv_waterfall.csv");
        CopulaConfig cfg;
        cfg.rho = 0.0;
        cfg.cutoff = -50.0;
        cfg.seed = a.seed;
        const PredictedBand prop = predict_waterfall(hn, bv, cfg);
        cfg.mode = CombinationMode::palmer;
        const PredictedBand palm = predict_waterfall(hn, bv, cfg);
        double above_diff = 0.0;
        std::vector<double> sp = prop.predicted, sl = palm.predicted;
        std::sort(sp.begin(), sp.end());
        std::sort(sl.begin(), sl.end());
        for (double x = -50.0; x <= 100.0; x += 1.0) {
            const double fp = static_cast<double>(std::upper_bound(sp.begin(), sp.end(), x) - sp.begin());
            const double fl = static_cast<double>(std::upper_bound(sl.begin(), sl.end(), x) - sl.begin());
            above_diff = std::max(above_diff, std::fabs(fp - fl));
        }
        const double deep_p = deep_response_rate(prop, 75.0).value;
        const double deep_l = deep_response_rate(palm, 75.0).value;
        table.row("hodgkin_mode_agreement", above_diff == 0.0,
                  "identical predictions for changes >= -50%");
        table.row("hodgkin_deep_tail", deep_p > deep_l,
                  "deep-response 75%: proposed " + fmt(deep_p) + " > palmer " + fmt(deep_l));
    }

    // sample sizing
    {
        DesignSpec d1;
        d1.p_control = 0.70;
        d1.p_experimental = 0.80;
        const auto s1 = sample_size_two_proportions(d1);
        table.row("sample_size_orr_endpoint", s1.n_total == 462 && s1.n_total > 400,
                  "0.70 vs 0.80: total = " + fmt(static_cast<double>(s1.n_total)) +
                      " (published: more than 400)");
        DesignSpec d2;
        d2.p_control = 0.40;
        d2.p_experimental = 0.60;
        const auto s2 = sample_size_two_proportions(d2);
        table.row("sample_size_deep_endpoint", s2.n_total >= 150 && s2.n_total <= 230,
                  "0.40 vs 0.60: total = " + fmt(static_cast<double>(s2.n_total)) +
                      ", cc total = " + fmt(static_cast<double>(s2.n_total_cc)) +
                      " (published ~200; calculation method unstated, accepted range [150,230])");
        table.row("deep_endpoint_needs_fewer", s2.n_total < s1.n_total,
                  "deep-response design smaller than response design");
    }

    // hypothetical deep-response example
    {
        const WaterfallSample d1w = load_waterfall_csv(fx + "/hypothetical_drug1_waterfall.csv");
        const WaterfallSample d2w = load_waterfall_csv(fx + "/hypothetical_drug2_waterfall.csv");
        const double deep1 = deep_response_rate(d1w, 75.0).value;
        table.row("hypothetical_drug1_deep", std::fabs(deep1 - 0.40) <= 1e-9,
                  "drug 1 deep-response rate = " + fmt(deep1) + " (target 0.40)");
        CopulaConfig cfg;
        cfg.rho = 0.0;
        cfg.seed = a.seed;
        cfg.n_draws = 20000;
        const PredictedBand pred = predict_waterfall(d1w, d2w, cfg);
        const auto resp = std::count_if(pred.predicted.begin(), pred.predicted.end(),
                                        [](double v) { return v < -30.0; });
        const double orr = static_cast<double>(resp) / static_cast<double>(pred.predicted.size());
        const double deep = deep_response_rate(pred, 75.0).value;
        table.row("hypothetical_combo_rates",
                  std::fabs(orr - 0.80) <= 0.03 && std::fabs(deep - 0.60) <= 0.03,
                  "predicted response " + fmt(orr) + " (~0.80), deep response " + fmt(deep) +
                      " (~0.60)");
    }

    // determinism
    {
        const WaterfallSample ipi = load_waterfall_csv(fx + "/checkmate067_ipi_waterfall.csv");
        const WaterfallSample nivo = load_waterfall_csv(fx + "/checkmate067_nivo_waterfall.csv");
        CopulaConfig cfg;
        cfg.seed = a.seed;
        const PredictedBand b1 = predict_waterfall(ipi, nivo, cfg);
        const PredictedBand b2 = predict_waterfall(ipi, nivo, cfg);
        table.row("determinism", b1.predicted == b2.predicted,
                  "repeated run with the same seed is identical");
    }

    out << '\n' << (table.all_pass ? "all checks passed" : "SOME CHECKS FAILED") << '\n';
    return table.all_pass ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Combination-therapy efficacy prediction from monotherapy data"};
    app.require_subcommand(1);

    PredictOrrArgs orr_args;
    auto* orr = app.add_subcommand("predict-orr",
                                   "Predict the combination response rate from two monotherapy rates");
    orr->add_option("--r1", orr_args.r1, "Response rate of drug 1")->required();
    orr->add_option("--r2", orr_args.r2, "Response rate of drug 2")->required();
    orr->add_option("--phi-prime,--phi", orr_args.phi_prime, "Response correlation");
    orr->add_option("--n1", orr_args.n1, "Arm size behind r1");
    orr->add_option("--n2", orr_args.n2, "Arm size behind r2");
    orr->add_option("--ci-level", orr_args.ci_level, "Confidence level for the interval");

    PredictDorArgs dor_args;
    auto* dor = app.add_subcommand("predict-dor",
                                   "Predict the combination duration-of-response curve");
    dor->add_option("--s1", dor_args.s1_path, "Survival CSV of drug 1")->required();
    dor->add_option("--s2", dor_args.s2_path, "Survival CSV of drug 2")->required();
    dor->add_option("--r1", dor_args.r1, "Response rate of drug 1")->required();
    dor->add_option("--r2", dor_args.r2, "Response rate of drug 2")->required();
    dor->add_option("--phi-prime", dor_args.phi_prime, "Response correlation");
    dor->add_option("--phi-dprime", dor_args.phi_dprime, "Duration correlation");
    dor->add_option("--n1", dor_args.n1, "Arm size of drug 1 (for standard errors)");
    dor->add_option("--n2", dor_args.n2, "Arm size of drug 2 (for standard errors)");
    dor->add_option("--out", dor_args.out_path, "Output CSV path")->required();

    PredictWaterfallArgs wf_args;
    auto* wf = app.add_subcommand("predict-waterfall",
                                  "Predict the combination waterfall from two monotherapy waterfalls");
    wf->add_option("--s1", wf_args.s1_path, "Waterfall CSV of drug 1")->required();
    wf->add_option("--s2", wf_args.s2_path, "Waterfall CSV of drug 2")->required();
    wf->add_option("--out", wf_args.out_path, "Output CSV path")->required();
    wf->add_option("--svg", wf_args.svg_path, "Optional SVG chart path");
    wf->add_option("--label1", wf_args.label1, "Drug 1 label (chart title)");
    wf->add_option("--label2", wf_args.label2, "Drug 2 label (chart title)");
    wf->add_option("--rho", wf_args.cfg.rho, "Copula / cell-level correlation");
    wf->add_option("--cutoff", wf_args.cfg.cutoff, "Response cutoff on % change (-30; -50 for SPD)");
    wf->add_option("--mode", wf_args.mode, "proposed or palmer")
        ->check(CLI::IsMember({"proposed", "palmer"}));
    wf->add_option("--n-draws", wf_args.cfg.n_draws, "Copula draws per prediction");
    wf->add_option("--nboot", wf_args.nboot, "Bootstrap replicates (0 = no band)");
    wf->add_option("--seed", wf_args.cfg.seed, "RNG seed");
    wf->add_option("--threads", wf_args.threads, "Bootstrap threads (0 = all cores)");
    wf->add_option("--resample-size", wf_args.resample_size, "Bootstrap resample size override");
    wf->add_flag("--exact-quantiles", wf_args.cfg.exact_quantiles,
                 "Use exact sample quantiles instead of the reference grid method");

    ReverseOrrArgs rev_args;
    auto* rev = app.add_subcommand("reverse-orr",
                                   "Recover a monotherapy rate from the combination rate");
    rev->add_option("--r", rev_args.r, "Combination response rate")->required();
    rev->add_option("--r1", rev_args.r1, "Known monotherapy response rate")->required();
    rev->add_option("--phi-prime,--phi", rev_args.phi_prime, "Response correlation");

    SampleSizeArgs ss_args;
    auto* ss = app.add_subcommand("sample-size",
                                  "Two-arm sample size for a one-sided binary-endpoint comparison");
    ss->add_option("--p1", ss_args.spec.p_control, "Control-arm proportion")->required();
    ss->add_option("--p2", ss_args.spec.p_experimental, "Experimental-arm proportion")->required();
    ss->add_option("--alpha", ss_args.spec.alpha_one_sided, "One-sided alpha");
    ss->add_option("--power", ss_args.spec.power, "Target power");
    ss->add_option("--ratio", ss_args.spec.allocation_ratio, "Allocation ratio (experimental:control)");
    ss->add_flag("--continuity", ss_args.continuity, "Also report continuity-corrected sizes");

    DeepResponseArgs dr_args;
    auto* dr = app.add_subcommand("deep-response",
                                  "Deep-response rate of a waterfall sample or predicted band");
    auto* dr_pchg = dr->add_option("--pchg", dr_args.pchg_path, "Waterfall CSV (pchg column)");
    auto* dr_band = dr->add_option("--band", dr_args.band_path, "Predicted-band CSV");
    dr->add_option("--threshold", dr_args.threshold, "Reduction threshold in percent (default 75)");
    dr_pchg->excludes(dr_band);

    ReproduceArgs rep_args;
    auto* rep = app.add_subcommand("reproduce",
                                   "Run all bundled fixtures against their acceptance targets");
    rep->add_option("--fixtures", rep_args.fixtures, "Fixture directory");
    rep->add_option("--nboot", rep_args.nboot, "Bootstrap replicates for the waterfall check");
    rep->add_option("--seed", rep_args.seed, "RNG seed");
    rep->add_option("--threads", rep_args.threads, "Bootstrap threads (0 = all cores)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << e.what() << '\n';
        return 2;
    }

    try {
        if (orr->parsed()) {
            cmd_predict_orr(orr_args, out);
        } else if (dor->parsed()) {
            cmd_predict_dor(dor_args, out, err);
        } else if (wf->parsed()) {
            cmd_predict_waterfall(wf_args, out, err);
        } else if (rev->parsed()) {
            cmd_reverse_orr(rev_args, out);
        } else if (ss->parsed()) {
            cmd_sample_size(ss_args, out);
        } else if (dr->parsed()) {
            if (dr_args.pchg_path.empty() && dr_args.band_path.empty()) {
                err << "error: usage: deep-response needs --pchg or --band\n";
                return 2;
            }
            cmd_deep_response(dr_args, out);
        } else if (rep->parsed()) {
            return cmd_reproduce(rep_args, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.category() << ": " << e.what() << '\n';
        return category_exit_code(e.category());
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace combopred
