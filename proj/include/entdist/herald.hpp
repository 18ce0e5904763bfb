// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <vector>

#include "entdist/params.hpp"

namespace entdist {

class UnsupportedOperation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Per-island, per-polarization single-detection declaration probability.
struct DeclarationProb {
    double q_total = 0.0;
    double q_photon = 0.0;  // photon-caused part; equals q_total without darks
};

struct HeraldStatistics {
    DeclarationProb q;
    double pair_prob = 0.0;       // q_total^2
    double true_pair_prob = 0.0;  // q_photon^2 / 2
    double p0 = 1.0;              // no herald on any island pair
    std::vector<double> pmf;      // p_k, k = 0..n_islands
    double expected_heralds = 0.0;
};

// Throws UnsupportedOperation for the unheralded configuration.
[[nodiscard]] DeclarationProb herald_decl_prob(Configuration config, const SourceParams& params);
[[nodiscard]] HeraldStatistics herald_statistics(Configuration config, const SourceParams& params);

// Distribution of min(z_H, z_V) for z_H, z_V iid Binomial(n, q).
[[nodiscard]] std::vector<double> min_binomial_pmf(int n, double q);

// Mean number of heralds usable by n_memories memories.
[[nodiscard]] double expected_heralds(const std::vector<double>& pmf, int n_memories);

}  // namespace entdist
