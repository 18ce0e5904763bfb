// SPDX-License-Identifier: MIT
#include "entdist/threshold.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "entdist/bell.hpp"

namespace entdist {

const char* to_string(Constraint constraint) {
    return constraint == Constraint::fraction ? "fraction" : "fidelity";
}

namespace {

struct Root {
    double value;
    bool non_monotonic;
};

Root largest_satisfying(const std::function<bool(double)>& ok, const std::string& what) {
    const double lo = threshold_bracket_low;
    const double hi = threshold_bracket_high;
    if (!ok(lo)) {
        throw InfeasibleThreshold(what + " cannot be met even at delta_g = 1e-9");
    }
    const double log_step = std::log(hi / lo) / (threshold_scan_points - 1);
    int first_fail = -1;
    bool non_monotonic = false;
    double prev = lo;
    double fail_at = hi;
    double pass_at = lo;
    for (int i = 1; i < threshold_scan_points; ++i) {
        const double x = i == threshold_scan_points - 1 ? hi : lo * std::exp(log_step * i);
        const bool good = ok(x);
        if (first_fail < 0 && !good) {
            first_fail = i;
            pass_at = prev;
            fail_at = x;
        } else if (first_fail >= 0 && good) {
            non_monotonic = true;
        }
        prev = x;
    }
    if (first_fail < 0) return {hi, false};

    double a = pass_at;
    double b = fail_at;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        (ok(mid) ? a : b) = mid;
    }
    return {a, non_monotonic};
}

}  // namespace

ThresholdResult delta_g_max(Configuration config, const SourceParams& params, double b_min,
                            double f_min) {
    if (!(b_min > 0.0 && b_min < 1.0) || !(f_min > 0.0 && f_min < 1.0)) {
        throw InfeasibleThreshold("thresholds must lie in (0, 1): b_min=" + std::to_string(b_min) +
                                  ", f_min=" + std::to_string(f_min));
    }
    auto at = [&](double dg) {
        SourceParams p = params;
        p.delta_g = dg;
        return bell_decomposition(config, p);
    };
    const std::string name(to_string(config));
    const Root fraction = largest_satisfying(
        [&](double dg) {
            const auto f = at(dg).fraction;
            return f.has_value() && *f >= b_min;
        },
        name + " Bell-state fraction >= " + std::to_string(b_min));
    const Root fidelity = largest_satisfying(
        [&](double dg) {
            const auto f = at(dg).fidelity;
            return f.has_value() && *f >= f_min;
        },
        name + " fidelity >= " + std::to_string(f_min));

    ThresholdResult r;
    r.fraction_root = fraction.value;
    r.fidelity_root = fidelity.value;
    r.fraction_non_monotonic = fraction.non_monotonic;
    r.fidelity_non_monotonic = fidelity.non_monotonic;
    r.binding = fraction.value < fidelity.value ? Constraint::fraction : Constraint::fidelity;
    r.delta_g = std::min(fraction.value, fidelity.value);
    return r;
}

}  // namespace entdist
