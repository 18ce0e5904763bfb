// SPDX-License-Identifier: MIT
#include "entdist/rate.hpp"

#include "entdist/bell.hpp"
#include "entdist/herald.hpp"

namespace entdist {

namespace {

double ebits_per_pulse(Configuration config, const SourceParams& p) {
    // Fidelity times Pr(Bell) is the psi- projection itself.
    const double correct = bell_decomposition(config, p).psi_minus;
    if (!is_heralded(config)) return p.n_memories * correct;
    const HeraldStatistics stats = herald_statistics(config, p);
    const double heralds = p.n_memories == 1 ? 1.0 - stats.p0 : stats.expected_heralds;
    return heralds * correct;
}

}  // namespace

RateReport rate_report(Configuration config, const SourceParams& p) {
    RateReport r;
    r.ebits_per_pulse = ebits_per_pulse(config, p);
    r.rate = p.pump_rate * r.ebits_per_pulse;
    if (is_heralded(config) && p.n_memories == 1) {
        SourceParams lossless = p;
        lossless.eta_r = 1.0;
        r.pr_ent = ebits_per_pulse(config, lossless);
    }
    return r;
}

}  // namespace entdist
