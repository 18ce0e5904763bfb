// SPDX-License-Identifier: MIT
#include "entdist/bell.hpp"

#include <cmath>
#include <stdexcept>

#include "entdist/derived.hpp"

namespace entdist {

namespace {

// Symbols of a heralded configuration. The plain family uses N_S' and no
// background; the background family uses N_S'' and thermal weights.
struct Heralded {
    double n;      // N_S' or N_S''
    double y;      // 1 - n
    double c;      // 1/n - beta
    double beta;   // eta_R / N_S
    double t;      // vacuum weight of the partner mode
    double t_comp; // 1 - t
    double f2;     // extraneous-mode vacuum factor, one side
    double f4;     // both sides
    double f2_comp;  // 1 - f2
};

Heralded zalm_symbols(const SourceParams& p, const DerivedQuantities& d, bool background) {
    const double beta = p.eta_r / d.n_s;
    if (!background) {
        return {d.n_s_prime, d.one_minus_n_s_prime, 1.0 - p.eta_r, beta,
                d.n_s_prime, d.one_minus_n_s_prime, 1.0, 1.0, 0.0};
    }
    return {d.n_s_dprime,
            d.one_minus_n_s_dprime,
            (1.0 - p.eta_r) * (p.n_b + 1.0),
            beta,
            d.n_s_dprime,
            d.one_minus_n_s_dprime,
            std::pow(d.n_b_prime, 2 * p.m_b),
            std::pow(d.n_b_prime, 4 * p.m_b),
            -std::expm1(-2.0 * p.m_b * std::log1p(p.n_b))};
}

Heralded chahine_symbols(const SourceParams& p, const DerivedQuantities& d, bool background) {
    Heralded h = zalm_symbols(p, d, background);
    // The partner of the detected signal is the auxiliary vacuum port,
    // thermal only through background leaking in.
    h.t = background ? d.n_tilde_b : 1.0;
    h.t_comp = background ? d.one_minus_n_tilde_b : 0.0;
    return h;
}

// Photon-number weights 0, 1, 2 of the heralded signal mode at the receiver
// and of its partner mode; the four Bell projections follow from products of
// these because the two polarizations are independent.
struct Weights {
    double s0, s1, s2;
    double t0, t1, t2;
};

Weights weights(const Heralded& h) {
    const double n2 = h.n * h.n;
    return {n2 * h.c,
            h.n * h.y + h.beta * n2 * (2.0 * h.n - 1.0),
            h.n * h.y * h.y + h.beta * n2 * h.y * (3.0 * h.n - 1.0),
            h.t,
            h.t * h.t_comp,
            h.t * h.t_comp * h.t_comp};
}

double psi_minus_of(const Weights& w) {
    const double a = w.s1 * w.t0;
    const double b = w.s0 * w.t1;
    return (a * a + b * b) / 2.0;
}

double psi_plus_of(const Weights& w) { return w.s0 * w.s1 * w.t0 * w.t1; }

double phi_of(const Weights& w) { return w.s0 * w.t0 * (w.s2 * w.t0 + w.s0 * w.t2) / 2.0; }

BellProjections zalm_projections(const Heralded& h) {
    const Weights w = weights(h);
    // Werner state: the three wrong Bell states share one weight.
    const double error = psi_plus_of(w) * h.f4;
    return {psi_minus_of(w) * h.f4, error, error, error};
}

BellProjections chahine_projections(const Heralded& h) {
    const Weights w = weights(h);
    const double phi = phi_of(w) * h.f4;
    return {psi_minus_of(w) * h.f4, psi_plus_of(w) * h.f4, phi, phi};
}

struct Unheralded {
    double u;   // 1 - 2 D1
    double d2;
    double d3;
    double f4;
};

Unheralded unheralded_symbols(const SourceParams& p, const DerivedQuantities& d, bool background) {
    if (!background) return {d.one_minus_2d1, d.d2, d.d3, 1.0};
    return {d.one_minus_2d1p, d.d2p, d.d3p, std::pow(d.n_b_prime, 4 * p.m_b)};
}

BellProjections unheralded_projections(const Unheralded& s) {
    const double d3sq = s.d3 * s.d3;
    const double error = s.u * s.u / d3sq * s.f4;
    return {(s.u * s.u + 8.0 * s.d2 * s.d2) / d3sq * s.f4, error, error, error};
}

// Loadable probability 1 - 2 A^2 f2 + B^2 f4 with A the one-sided vacuum
// amplitude and B the two-sided one, written as (1 - A^2 f2)^2 + f4 (B - A^2)(B + A^2)
// so that small eta_R does not cancel. a_comp = 1 - A and gap = B - A^2.
double loadable_from(const Heralded& h, double a, double a_comp, double b, double gap) {
    const double one_sided = h.f2_comp + h.f2 * a_comp * (1.0 + a);
    return one_sided * one_sided + h.f4 * gap * (b + a * a);
}

double heralded_loadable_zalm(const Heralded& h) {
    const double n = h.n;
    const double bn = h.beta * n;
    const double a = n * (1.0 - bn / 2.0);
    const double b = n * n * (1.0 - bn);
    return loadable_from(h, a, h.y + bn * n / 2.0, b, -n * n * bn * bn / 4.0);
}

double heralded_loadable_chahine(const Heralded& h) {
    const double n = h.n;
    const double t = h.t;
    const double s = n + t;
    const double nt = 2.0 * n * t / s;
    const double diff = h.t_comp - h.y;  // n - t
    const double a = nt * (1.0 - h.beta * nt / 2.0);
    const double a_comp = (n * h.t_comp + t * h.y) / s + h.beta * nt * nt / 2.0;
    const double b = n * t * (1.0 - h.beta * n);
    // (n t - nt^2) - beta (n^2 t - nt^3) - beta^2 nt^4 / 4
    const double gap = n * t * diff * diff / (s * s) -
                       h.beta * n * n * t * diff * (n * n + 4.0 * n * t - t * t) / (s * s * s) -
                       h.beta * h.beta * nt * nt * nt * nt / 4.0;
    return loadable_from(h, a, a_comp, b, gap);
}

// 1 - 2a + b rearranged as (1-a)^2 + (b - a^2); both pieces are free of
// cancellation, which matters as delta_g -> 0 where the result is O(dg).
double unheralded_loadable(const SourceParams& p, double b, double d3, int m_b) {
    const double er = p.eta_r;
    const double dg = p.delta_g;
    const double mean = er * dg + b;
    const double s = 1.0 + mean;
    const double log_f = m_b * std::log1p(p.n_b);
    const double one_minus_a = -std::expm1(-2.0 * log_f - 2.0 * std::log1p(mean));
    const double c2 = er * er * p.gain() * dg;
    const double f4 = std::exp(-4.0 * log_f);
    const double s2 = s * s;
    return one_minus_a * one_minus_a + f4 * c2 * (s2 + d3) / (d3 * d3 * s2 * s2);
}

double zalm_polynomial(const Heralded& h) {
    const double n = h.n;
    const double n2 = n * n;
    const double n4 = n2 * n2;
    const double y = 1.0 - n;
    const double bracket = 2.0 * y * y - 2.0 * h.beta * (3.0 * n2 * n - 5.0 * n2 + 2.0 * n) +
                           h.beta * h.beta * (4.0 * n4 - 6.0 * n2 * n + 2.0 * n2);
    return (2.0 * n4 * bracket + h.beta * h.beta * n4 * n4 / 2.0) * h.f4;
}

double chahine_polynomial(const Heralded& h, bool background) {
    const double n = h.n;
    const double y = 1.0 - n;
    const double x = h.t;
    const double q = background ? (1.0 - x) * (1.0 - x) : 0.0;
    const double b = h.beta;
    const double bracket = 3.0 * (y * y + q) / 2.0 - 3.0 * b * n * ((1.0 - 2.0 * n) * y + q) +
                           b * b * n * n *
                               (((1.0 - 2.0 * n) * (1.0 - 2.0 * n) + q) +
                                2.0 * ((1.0 - 3.0 * n) * y + q)) /
                               2.0;
    const double pre = n * n * x * x;
    if (!background) return pre * bracket;
    const double psi_plus =
        pre * (1.0 - x) * (y - b * n * (2.0 - 3.0 * n) + b * b * n * n * (1.0 - 2.0 * n));
    return (pre * bracket + psi_plus) * h.f4;
}

double unheralded_polynomial(const SourceParams& p, const DerivedQuantities& d, bool background) {
    const double er = p.eta_r;
    const double dg = p.delta_g;
    const double g = p.gain();
    const double k = er * (er - 2.0) * dg;
    const double e = er * (er - 1.0) * dg;
    const double num = er * er * dg * (3.0 * g - 1.0 + k) + 3.0 * e * e;
    if (!background) return num / std::pow(k - 1.0, 4);
    // Background adds 4 B (2A + B) to the numerator, with A + B = (1 - 2 D1') D3'.
    const double a = (1.0 - er) * er * dg;
    const double bn = (1.0 - er) * p.n_b * (1.0 + 2.0 * er * dg + (1.0 - er) * p.n_b);
    const double f4 = std::pow(d.n_b_prime, 4 * p.m_b);
    return (num + 4.0 * bn * (2.0 * a + bn)) / std::pow(d.d3p, 4) * f4;
}

BellProjections projections_for(Configuration config, const SourceParams& p, bool background) {
    const DerivedQuantities d = derive_quantities(p);
    switch (config) {
        case Configuration::zalm: return zalm_projections(zalm_symbols(p, d, background));
        case Configuration::chahine: return chahine_projections(chahine_symbols(p, d, background));
        case Configuration::unheralded:
            return unheralded_projections(unheralded_symbols(p, d, background));
    }
    return {};
}

double loadable_for(Configuration config, const SourceParams& p, bool background) {
    const DerivedQuantities d = derive_quantities(p);
    switch (config) {
        case Configuration::zalm: return heralded_loadable_zalm(zalm_symbols(p, d, background));
        case Configuration::chahine:
            return heralded_loadable_chahine(chahine_symbols(p, d, background));
        case Configuration::unheralded:
            if (!background) return unheralded_loadable(p, 0.0, d.d3, 0);
            return unheralded_loadable(p, (1.0 - p.eta_r) * p.n_b, d.d3p, p.m_b);
    }
    return 0.0;
}

double polynomial_for(Configuration config, const SourceParams& p, bool background) {
    const DerivedQuantities d = derive_quantities(p);
    switch (config) {
        case Configuration::zalm: return zalm_polynomial(zalm_symbols(p, d, background));
        case Configuration::chahine:
            return chahine_polynomial(chahine_symbols(p, d, background), background);
        case Configuration::unheralded: return unheralded_polynomial(p, d, background);
    }
    return 0.0;
}

}  // namespace

namespace closed_form {

double loadable_plain(Configuration c, const SourceParams& p) { return loadable_for(c, p, false); }
double loadable_background(Configuration c, const SourceParams& p) { return loadable_for(c, p, true); }
BellProjections projections_plain(Configuration c, const SourceParams& p) {
    return projections_for(c, p, false);
}
BellProjections projections_background(Configuration c, const SourceParams& p) {
    return projections_for(c, p, true);
}
double pr_bell_polynomial_plain(Configuration c, const SourceParams& p) {
    return polynomial_for(c, p, false);
}
double pr_bell_polynomial_background(Configuration c, const SourceParams& p) {
    return polynomial_for(c, p, true);
}

}  // namespace closed_form

double pr_loadable(Configuration config, const SourceParams& params) {
    return loadable_for(config, params, params.has_background());
}

BellDecomposition assemble(const BellProjections& pr, double loadable) {
    BellDecomposition out;
    out.psi_minus = pr.psi_minus;
    out.psi_plus = pr.psi_plus;
    out.phi_plus = pr.phi_plus;
    out.phi_minus = pr.phi_minus;
    out.pr_bell = pr.sum();
    out.pr_loadable = loadable;
    if (loadable > 0.0) out.fraction = out.pr_bell / loadable;
    if (out.pr_bell > 0.0) out.fidelity = out.psi_minus / out.pr_bell;
    return out;
}

BellDecomposition bell_decomposition(Configuration config, const SourceParams& params) {
    const bool background = params.has_background();
    BellDecomposition out =
        assemble(projections_for(config, params, background), loadable_for(config, params, background));
    out.pr_bell_polynomial = polynomial_for(config, params, background);
    return out;
}

std::array<double, 4> werner_weights(const BellDecomposition& d) {
    if (!(d.pr_bell > 0.0)) throw std::domain_error("werner_weights: pr_bell is zero");
    return {d.psi_minus / d.pr_bell, d.psi_plus / d.pr_bell, d.phi_plus / d.pr_bell,
            d.phi_minus / d.pr_bell};
}

}  // namespace entdist
