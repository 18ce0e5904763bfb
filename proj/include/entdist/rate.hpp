// SPDX-License-Identifier: MIT
#pragma once

#include <optional>

#include "entdist/params.hpp"

namespace entdist {

struct RateReport {
    double ebits_per_pulse = 0.0;
    double rate = 0.0;             // ebits/s
    std::optional<double> pr_ent;  // heralded, single memory only
};

[[nodiscard]] RateReport rate_report(Configuration config, const SourceParams& params);

}  // namespace entdist
