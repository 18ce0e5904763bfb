// SPDX-License-Identifier: MIT
#include "entdist/herald.hpp"

#include <algorithm>
#include <cmath>

namespace entdist {

DeclarationProb herald_decl_prob(Configuration config, const SourceParams& p) {
    const double x = p.eta_t * p.delta_g;
    const double d = p.dark_per_gate;
    DeclarationProb out;
    switch (config) {
        case Configuration::zalm: {
            // Two detectors per polarization: the photon single lands on
            // either port and neither detector may fire a dark count.
            const double e = std::exp(-2.0 * d);
            out.q_photon = 2.0 * x / std::pow(1.0 + x, 3) * e;
            out.q_total = out.q_photon + 2.0 * d * e / std::pow(1.0 + x, 2);
            return out;
        }
        case Configuration::chahine: {
            const double e = std::exp(-d);
            out.q_photon = x / std::pow(1.0 + x, 2) * e;
            out.q_total = out.q_photon + d * e / (1.0 + x);
            return out;
        }
        case Configuration::unheralded: break;
    }
    throw UnsupportedOperation("herald statistics are undefined for unheralded operation");
}

std::vector<double> min_binomial_pmf(int n, double q) {
    const auto size = static_cast<std::size_t>(n + 1);
    std::vector<double> binom(size, 0.0);
    if (q <= 0.0) {
        binom.front() = 1.0;
    } else if (q >= 1.0) {
        binom.back() = 1.0;
    } else {
        const double lq = std::log(q);
        const double lp = std::log1p(-q);
        const double lgn = std::lgamma(n + 1.0);
        for (int k = 0; k <= n; ++k) {
            binom[k] = std::exp(lgn - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                                k * lq + (n - k) * lp);
        }
    }
    // Upper tails T_k = Pr(z >= k), accumulated from the smallest terms.
    // p_k = T_k^2 - T_{k+1}^2 = b_k (b_k + 2 T_{k+1}).
    std::vector<double> pmf(size, 0.0);
    double tail_above = 0.0;
    for (int k = n; k >= 0; --k) {
        pmf[k] = binom[k] * (binom[k] + 2.0 * tail_above);
        tail_above += binom[k];
    }
    return pmf;
}

double expected_heralds(const std::vector<double>& pmf, int n_memories) {
    double total = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        total += static_cast<double>(std::min<std::size_t>(k, n_memories)) * pmf[k];
    }
    return std::min(total, static_cast<double>(n_memories));
}

HeraldStatistics herald_statistics(Configuration config, const SourceParams& p) {
    HeraldStatistics s;
    s.q = herald_decl_prob(config, p);
    s.pair_prob = s.q.q_total * s.q.q_total;
    s.true_pair_prob = s.q.q_photon * s.q.q_photon / 2.0;
    s.pmf = min_binomial_pmf(p.n_islands, s.q.q_total);
    s.p0 = s.pmf.front();
    s.expected_heralds = expected_heralds(s.pmf, p.n_memories);
    return s;
}

}  // namespace entdist
