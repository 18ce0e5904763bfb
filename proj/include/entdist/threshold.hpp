// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>

#include "entdist/params.hpp"

namespace entdist {

enum class Constraint { fraction, fidelity };

[[nodiscard]] const char* to_string(Constraint constraint);

struct ThresholdResult {
    double delta_g = 0.0;        // satisfies both constraints
    double fraction_root = 0.0;  // largest delta_g with B >= b_min
    double fidelity_root = 0.0;  // largest delta_g with F >= f_min
    Constraint binding = Constraint::fidelity;
    // A pre-scan point past the first crossing satisfied the constraint
    // again; the leftmost crossing was used.
    bool fraction_non_monotonic = false;
    bool fidelity_non_monotonic = false;
};

class InfeasibleThreshold : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double threshold_bracket_low = 1e-9;
inline constexpr double threshold_bracket_high = 1.0;
inline constexpr int threshold_scan_points = 64;

// Largest delta_g in (0, 1] meeting B >= b_min and F >= f_min. The params'
// delta_g is ignored. Bisection runs until the bracket stops shrinking or
// 200 iterations, so the root is good to far better than 1e-7.
[[nodiscard]] ThresholdResult delta_g_max(Configuration config, const SourceParams& params,
                                          double b_min, double f_min);

}  // namespace entdist
