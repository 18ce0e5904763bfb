// SPDX-License-Identifier: MIT
#pragma once

#include <vector>

#include "entdist/params.hpp"

namespace entdist {

// Intermediate symbols shared by the closed forms. Fields named after the
// usual notation: n_s = N_S, n_s_prime = N_S', n_s_dprime = N_S'', etc.
struct DerivedQuantities {
    double gain = 1.0;
    double n_s = 1.0;
    double n_s_prime = 1.0;
    double n_s_dprime = 1.0;
    double n_tilde_s = 1.0;
    double n_b_prime = 1.0;
    double n_tilde_b = 1.0;
    double n_tilde_b_prime = 1.0;
    double d1 = 0.5, d2 = 0.0, d3 = 1.0;
    double d1p = 0.5, d2p = 0.0, d3p = 1.0;

    // Complements evaluated without cancellation; all are sums of
    // non-negative terms.
    double inv_n_s_minus_one = 0.0;     // 1/N_S - 1
    double one_minus_n_s_prime = 0.0;
    double one_minus_n_s_dprime = 0.0;
    double one_minus_n_tilde_b = 0.0;
    double one_minus_2d1 = 0.0;
    double one_minus_2d1p = 0.0;
};

[[nodiscard]] DerivedQuantities derive_quantities(const SourceParams& params);

// P_m = dg^m / (1+dg)^(m+1) for m = 0..m_max.
[[nodiscard]] std::vector<double> bose_einstein_pmf(double delta_g, int m_max);

}  // namespace entdist
