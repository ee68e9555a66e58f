#include "combopred/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace combopred {

Rate make_rate(double value, std::optional<long> n) {
    if (!(value >= 0.0 && value <= 1.0)) {
        std::ostringstream msg;
        msg << "rate must be a probability in [0,1], got " << value;
        throw InvariantViolation(msg.str());
    }
    if (n && *n < 1) {
        throw InvariantViolation("rate arm size must be >= 1");
    }
    return Rate{value, n};
}

void CorrelationSpec::validate() const {
    for (double v : {phi_prime, phi_dprime, phi_tumor}) {
        if (!(v >= -1.0 && v <= 1.0)) {
            std::ostringstream msg;
            msg << "correlation must lie in [-1,1], got " << v;
            throw InvariantViolation(msg.str());
        }
    }
}

std::optional<std::string> phi_tumor_warning(const CorrelationSpec& corr) {
    if (corr.phi_tumor < 0.0 || corr.phi_tumor > 0.3) {
        std::ostringstream msg;
        msg << "cell-level correlation " << corr.phi_tumor
            << " is outside the empirically supported range [0, 0.3]";
        return msg.str();
    }
    return std::nullopt;
}

void SurvivalCurve::validate() const {
    if (times.size() != probs.size()) {
        throw InvariantViolation("survival curve: times and probs differ in length");
    }
    if (times.size() < 2) {
        throw InvariantViolation("survival curve needs at least 2 grid points");
    }
    if (times.front() != 0.0 || probs.front() != 1.0) {
        throw InvariantViolation("survival curve must start at (t=0, S=1)");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(probs[i] >= 0.0 && probs[i] <= 1.0)) {
            std::ostringstream msg;
            msg << "survival prob out of [0,1] at grid point " << i + 1;
            throw InvariantViolation(msg.str());
        }
        if (i > 0) {
            if (!(times[i] > times[i - 1])) {
                std::ostringstream msg;
                msg << "times must be strictly increasing at grid point " << i + 1;
                throw InvariantViolation(msg.str());
            }
            if (probs[i] > probs[i - 1]) {
                std::ostringstream msg;
                msg << "survival probs must be nonincreasing at grid point " << i + 1;
                throw InvariantViolation(msg.str());
            }
        }
    }
}

double SurvivalCurve::at(double t) const {
    if (t < times.front()) return 1.0;
    auto it = std::upper_bound(times.begin(), times.end(), t);
    const auto i = static_cast<std::size_t>(it - times.begin()) - 1;
    return probs[std::min(i, probs.size() - 1)];
}

const char* to_string(MedianOrdering ordering) {
    switch (ordering) {
        case MedianOrdering::combo_shorter: return "combo_shorter";
        case MedianOrdering::combo_equal: return "combo_equal";
        case MedianOrdering::combo_longer: return "combo_longer";
    }
    return "?";
}

void WaterfallSample::validate() const {
    if (values.empty()) {
        throw EmptySample("waterfall sample is empty");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= -100.0) || !std::isfinite(values[i])) {
            std::ostringstream msg;
            msg << "waterfall value " << values[i] << " at position " << i + 1
                << " is below -100 or not finite";
            throw InvariantViolation(msg.str());
        }
    }
}

const char* to_string(CombinationMode mode) {
    return mode == CombinationMode::proposed ? "proposed" : "palmer";
}

void CopulaConfig::validate() const {
    if (!(rho >= -1.0 && rho <= 1.0)) {
        throw InvariantViolation("copula rho must lie in [-1,1]");
    }
    if (n_draws < 100) {
        throw InvariantViolation("n_draws must be >= 100");
    }
    if (!(grid_step > 0.0)) {
        throw InvariantViolation("grid_step must be positive");
    }
    if (!(grid_min < cutoff && cutoff < grid_max)) {
        throw InvariantViolation("need grid_min < cutoff < grid_max");
    }
}

void DesignSpec::validate() const {
    if (!(p_control > 0.0 && p_control < 1.0 && p_experimental > 0.0 && p_experimental < 1.0)) {
        throw InvariantViolation("design proportions must lie strictly in (0,1)");
    }
    if (p_control == p_experimental) {
        throw InvariantViolation("design proportions must differ");
    }
    if (!(alpha_one_sided > 0.0 && alpha_one_sided < 0.5)) {
        throw InvariantViolation("alpha must lie in (0, 0.5)");
    }
    if (!(power > 0.5 && power < 1.0)) {
        throw InvariantViolation("power must lie in (0.5, 1)");
    }
    if (!(allocation_ratio > 0.0)) {
        throw InvariantViolation("allocation ratio must be positive");
    }
}

} // namespace combopred
