// SPDX-License-Identifier: MIT
#include "entdist/derived.hpp"

#include <cmath>

namespace entdist {

DerivedQuantities derive_quantities(const SourceParams& p) {
    const double dg = p.delta_g;
    const double g = p.gain();
    const double er = p.eta_r;
    const double nb = p.n_b;

    DerivedQuantities d;
    d.gain = g;
    d.n_s = (p.eta_t * dg + 1.0) / g;
    d.inv_n_s_minus_one = dg * (1.0 - p.eta_t) / (p.eta_t * dg + 1.0);

    d.n_s_prime = 1.0 / (er / d.n_s + (1.0 - er));
    d.one_minus_n_s_prime = d.n_s_prime * (er * d.inv_n_s_minus_one);
    d.n_s_dprime = 1.0 / (er / d.n_s + (1.0 - er) * (nb + 1.0));
    d.one_minus_n_s_dprime = d.n_s_dprime * (er * d.inv_n_s_minus_one + (1.0 - er) * nb);
    d.n_tilde_s = 2.0 * d.n_s_prime / (d.n_s_prime + 1.0);

    d.n_b_prime = 1.0 / (nb + 1.0);
    d.n_tilde_b = 1.0 / (1.0 + (1.0 - er) * nb);
    d.one_minus_n_tilde_b = (1.0 - er) * nb * d.n_tilde_b;
    d.n_tilde_b_prime = 2.0 * d.n_s_dprime * d.n_tilde_b / (d.n_s_dprime + d.n_tilde_b);

    const double root = er * std::sqrt(g * dg);
    d.d3 = 1.0 - er * (er - 2.0) * dg;
    d.d1 = (1.0 + er * dg) / (2.0 * d.d3);
    d.d2 = root / (2.0 * d.d3);
    d.one_minus_2d1 = (1.0 - er) * (er * dg) / d.d3;

    // Background-shifted mean photon number is 1 + er*dg + b with
    // b = (1-er)*nb; D3' = (1 + er*dg + b)^2 - er^2*g*dg.
    const double b = (1.0 - er) * nb;
    d.d3p = d.d3 + b * (2.0 + 2.0 * er * dg + b);
    d.d1p = (1.0 + er * dg + b) / (2.0 * d.d3p);
    d.d2p = root / (2.0 * d.d3p);
    d.one_minus_2d1p =
        (1.0 - er) * (er * dg + nb * (1.0 + 2.0 * er * dg + b)) / d.d3p;
    return d;
}

std::vector<double> bose_einstein_pmf(double delta_g, int m_max) {
    std::vector<double> pmf(static_cast<std::size_t>(m_max < 0 ? 0 : m_max + 1));
    const double g = 1.0 + delta_g;
    const double ratio = delta_g / g;
    double term = 1.0 / g;
    for (auto& value : pmf) {
        value = term;
        term *= ratio;
    }
    return pmf;
}

}  // namespace entdist
