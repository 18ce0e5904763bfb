// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <string>

#include "entdist/bell.hpp"
#include "entdist/derived.hpp"
#include "entdist/herald.hpp"
#include "entdist/oracle.hpp"

using namespace entdist;
using namespace entdist::oracle;

namespace {

SourceParams point(double dg, double eta_t, double eta_r) {
    SourceParams p;
    p.delta_g = dg;
    p.eta_t = eta_t;
    p.eta_r = eta_r;
    return p;
}

OracleResult simulate(Configuration c, const SourceParams& p, int cutoff = 6) {
    OracleSettings s;
    s.config = c;
    s.params = p;
    s.cutoff = cutoff;
    return run_oracle(s);
}

double relative(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

// Largest relative gap over the projections, loadable mass, fraction and fidelity.
double worst_gap(const BellDecomposition& cf, const BellDecomposition& o) {
    double w = 0.0;
    const double floor = 1e-14 * cf.pr_loadable;
    const std::array<std::pair<double, double>, 5> pairs{{{cf.psi_minus, o.psi_minus},
                                                          {cf.psi_plus, o.psi_plus},
                                                          {cf.phi_plus, o.phi_plus},
                                                          {cf.phi_minus, o.phi_minus},
                                                          {cf.pr_loadable, o.pr_loadable}}};
    for (auto [a, b] : pairs) {
        if (std::fabs(a - b) <= floor) continue;
        w = std::max(w, std::fabs(a - b) / std::fabs(a));
    }
    w = std::max(w, relative(*o.fraction, *cf.fraction));
    w = std::max(w, relative(*o.fidelity, *cf.fidelity));
    return w;
}

}  // namespace

TEST_CASE("herald probabilities with lossless idlers") {
    for (double x : {0.001, 0.0173, 0.1}) {
        const OracleResult z = simulate(Configuration::zalm, point(x, 1.0, 0.5), 8);
        const double g = 1.0 + x;
        CHECK(z.herald_all_patterns == doctest::Approx(4 * x * x / std::pow(g, 6)).epsilon(1e-10));
        CHECK(z.herald_probability == doctest::Approx(x * x / std::pow(g, 6)).epsilon(1e-10));
        const OracleResult c = simulate(Configuration::chahine, point(x, 1.0, 0.5), 8);
        CHECK(c.herald_probability == doctest::Approx(x * x / std::pow(g, 4)).epsilon(1e-10));
    }
}

TEST_CASE("herald probabilities against the declaration model") {
    for (Configuration c : {Configuration::zalm, Configuration::chahine}) {
        for (double et : {0.5, 0.9}) {
            for (double dark : {0.0, 5e-7, 1e-3}) {
                SourceParams p = point(0.0263, et, 0.01);
                p.dark_per_gate = dark;
                // Cutoff 6 truncates q near 1e-11 at eta_t = 0.5; 10 is exact.
                const OracleResult o = simulate(c, p, 10);
                const DeclarationProb cf = herald_decl_prob(c, p);
                const DeclarationProb conv = dark_convolve(o.clicks, dark);
                CHECK(conv.q_total == doctest::Approx(cf.q_total).epsilon(1e-12));
                CHECK(conv.q_photon == doctest::Approx(cf.q_photon).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("dark-count convolution") {
    const double d = 1e-3;
    const ClickPmf single{1, {0.7, 0.2, 0.1}};
    const DeclarationProb one = dark_convolve(single, d);
    CHECK(one.q_total == doctest::Approx(0.7 * d * std::exp(-d) + 0.2 * std::exp(-d)).epsilon(1e-14));
    CHECK(one.q_photon == doctest::Approx(0.2 * std::exp(-d)).epsilon(1e-14));

    const ClickPmf dark_only{2, {1, 0, 0, 0, 0, 0, 0, 0, 0}};
    CHECK(dark_convolve(dark_only, d).q_total == doctest::Approx(2 * d * std::exp(-2 * d)).epsilon(1e-14));
    CHECK(dark_convolve(dark_only, d).q_photon == 0.0);

    // Index order is class_0 * 3 + class_1; patterns (1,0) and (0,1) declare.
    const ClickPmf split{2, {0.5, 0.2, 0.0, 0.3, 0.0, 0.0, 0.0, 0.0, 0.0}};
    CHECK(dark_convolve(split, 0.0).q_total == doctest::Approx(0.5).epsilon(1e-15));
    const ClickPmf both{2, {0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0}};
    CHECK(dark_convolve(both, 0.0).q_total == 0.0);
}

TEST_CASE("operating points match the closed forms") {
    const SourceParams chahine = point(0.0262774539, 0.9, 0.01);
    const OracleResult c = simulate(Configuration::chahine, chahine);
    CHECK(worst_gap(bell_decomposition(Configuration::chahine, chahine), c.decomposition) < 1e-8);
    // Chahine heralds put no weight on psi_plus without background.
    CHECK(std::fabs(c.decomposition.psi_plus) < 1e-14 * c.decomposition.pr_loadable);

    const SourceParams unheralded = point(0.0069418027, 0.9, 0.01);
    const OracleResult u = simulate(Configuration::unheralded, unheralded);
    CHECK(worst_gap(bell_decomposition(Configuration::unheralded, unheralded), u.decomposition) < 1e-8);

    const SourceParams zalm = point(0.0173289703, 0.9, 0.01);
    const OracleResult z = simulate(Configuration::zalm, zalm);
    CHECK(worst_gap(bell_decomposition(Configuration::zalm, zalm), z.decomposition) < 1e-8);
    CHECK(z.leaked < 1e-8);
}

TEST_CASE("small-gain limit") {
    for (Configuration c : all_configurations) {
        const SourceParams p = point(1e-5, 0.9, 0.1);
        const OracleResult o = simulate(c, p, 4);
        CHECK(worst_gap(bell_decomposition(c, p), o.decomposition) < 1e-8);
    }
    const OracleResult zero = simulate(Configuration::unheralded, point(0.0, 0.9, 0.1));
    CHECK(zero.decomposition.pr_loadable == 0.0);
    CHECK(zero.decomposition.psi_minus == 0.0);
    CHECK_FALSE(zero.decomposition.fraction.has_value());

    const OracleResult none = simulate(Configuration::zalm, point(0.0, 0.9, 0.1));
    CHECK_FALSE(none.conditional);
    CHECK(none.herald_probability == 0.0);
}

TEST_CASE("unheralded state in the coherent basis") {
    const double dg = 0.03;
    const double g = 1.0 + dg;
    const fock::FockPure state =
        fock::tensor(fock::tmsv_state(dg, 10, false), fock::tmsv_state(dg, 10, true));
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    for (int k = 0; k < 20; ++k) {
        // Modes are S_H, I_V, S_V, I_H.
        std::array<fock::complex, 4> a;
        for (auto& v : a) v = {u(rng), u(rng)};
        double norm = 0.0;
        for (auto v : a) norm += std::norm(v);
        const double expected =
            std::exp(-norm + 2 * std::sqrt(dg / g) * std::real(a[0] * a[1] - a[2] * a[3])) / (g * g);
        CHECK(std::norm(fock::coherent_matrix_element(state, a)) ==
              doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("cross-island wiring") {
    for (Configuration c : {Configuration::zalm, Configuration::chahine}) {
        OracleSettings s;
        s.config = c;
        s.params = point(0.0263, 0.8, 0.1);
        const OracleResult same = run_oracle(s);
        s.wiring = IslandWiring::cross_island;
        const OracleResult cross = run_oracle(s);
        CHECK(worst_gap(same.decomposition, cross.decomposition) < 1e-10);
        CHECK(cross.herald_probability == doctest::Approx(same.herald_probability).epsilon(1e-10));
    }
}

TEST_CASE("psi-plus heralds") {
    OracleSettings s;
    s.config = Configuration::zalm;
    s.params = point(0.0263, 0.9, 0.1);
    const BellDecomposition minus = run_oracle(s).decomposition;
    s.herald = HeraldType::psi_plus;
    const BellDecomposition plus = run_oracle(s).decomposition;
    CHECK(plus.psi_plus == doctest::Approx(minus.psi_minus).epsilon(1e-12));
    CHECK(plus.psi_minus == doctest::Approx(minus.psi_plus).epsilon(1e-12));
    CHECK(plus.phi_plus == doctest::Approx(minus.phi_plus).epsilon(1e-12));
    CHECK(plus.pr_loadable == doctest::Approx(minus.pr_loadable).epsilon(1e-12));
}

TEST_CASE("truncation guard") {
    OracleSettings s;
    s.config = Configuration::zalm;
    s.params = point(0.03, 0.9, 0.01);
    s.cutoff = 2;
    try {
        (void)run_oracle(s);
        FAIL("expected a leakage error");
    } catch (const LeakageError& e) {
        CHECK(std::string(e.what()).find("increase the cutoff") != std::string::npos);
    }
    s.cutoff = 1;
    CHECK_THROWS((void)run_oracle(s));
}

TEST_CASE("Chahine background against alternative readings") {
    SourceParams p = point(0.0263, 0.9, 0.01);
    p.n_b = 1e-3;
    const BellDecomposition cf = bell_decomposition(Configuration::chahine, p);
    const BellDecomposition o = simulate(Configuration::chahine, p).decomposition;
    CHECK(worst_gap(cf, o) < 1e-6);

    // Alternative reading: 1 - N_B' where the loss-weighted background enters,
    // and an unsquared background term in the second-order phi coefficient.
    const DerivedQuantities d = derive_quantities(p);
    const double n = d.n_s_dprime;
    const double b = p.eta_r / d.n_s;
    const double nbp = d.n_b_prime;
    const double tb = d.n_tilde_b;
    const double w = 1.0 - nbp;
    const double alt_psi_plus =
        n * n * nbp * nbp * w * ((1 - n) - b * n * (2 - 3 * n) + b * b * n * n * (1 - 2 * n));
    const double alt_phi =
        n * n * tb * tb *
        ((w * w + (1 - n) * (1 - n)) / 2 - b * n * (w * w + (1 - 2 * n) * (1 - n)) +
         b * b * n * n * (w + (1 - 3 * n) * (1 - n)) / 2);
    CHECK(relative(alt_psi_plus, o.psi_plus) > 1e-3);
    CHECK(relative(alt_phi, o.phi_plus) > 1e-3);
    CHECK(relative(cf.psi_plus, o.psi_plus) < 1e-6);
    CHECK(relative(cf.phi_plus, o.phi_plus) < 1e-6);
}

TEST_CASE("unheralded background against alternative readings") {
    SourceParams p = point(0.00694, 0.9, 0.01);
    p.n_b = 1e-3;
    const BellDecomposition cf = bell_decomposition(Configuration::unheralded, p);
    const BellDecomposition o = simulate(Configuration::unheralded, p).decomposition;
    CHECK(worst_gap(cf, o) < 1e-6);

    // Alternative D1' without the unattenuated background term.
    const DerivedQuantities d = derive_quantities(p);
    const double alt_d1p = (1 + p.eta_r * (p.delta_g - p.n_b)) / (2 * d.d3p);
    const double alt_error = std::pow((1 - 2 * alt_d1p) / d.d3p, 2);
    CHECK(relative(alt_error, o.psi_plus) > 1e-2);
    CHECK(relative(cf.psi_plus, o.psi_plus) < 1e-6);
}

TEST_CASE("extraneous background modes") {
    SourceParams p = point(0.0173, 0.9, 0.01);
    p.n_b = 1e-4;
    p.m_b = 25;
    for (Configuration c : {Configuration::zalm, Configuration::chahine}) {
        const BellDecomposition cf = bell_decomposition(c, p);
        const BellDecomposition o = simulate(c, p).decomposition;
        CHECK(worst_gap(cf, o) < 1e-6);
    }
}

TEST_CASE("cutoff convergence") {
    auto gap = [](Configuration c, const SourceParams& p, int cutoff) {
        OracleSettings s;
        s.config = c;
        s.params = p;
        s.cutoff = cutoff;
        s.tolerance = 1.0;
        return worst_gap(bell_decomposition(c, p), run_oracle(s).decomposition);
    };
    // Heralded sources shrink the error by at least the thermal ratio per step.
    for (Configuration c : {Configuration::zalm, Configuration::chahine}) {
        for (double dg : {0.1, 0.3}) {
            for (double er : {0.01, 0.1, 1.0}) {
                const SourceParams p = point(dg, 0.9, er);
                const double lambda = dg / (1 + dg);
                double previous = gap(c, p, 2);
                for (int cutoff = 3; cutoff <= 5; ++cutoff) {
                    const double e = gap(c, p, cutoff);
                    CHECK(e <= lambda * previous);
                    previous = e;
                }
            }
        }
    }
    // Lossless unheralded pairs converge at exactly the thermal ratio.
    {
        const SourceParams p = point(0.1, 0.9, 1.0);
        const double ratio = gap(Configuration::unheralded, p, 5) / gap(Configuration::unheralded, p, 4);
        CHECK(ratio == doctest::Approx(0.1 / 1.1).epsilon(0.01));
    }
    // With receiver loss the unheralded error shrinks more slowly than the
    // thermal ratio: each step gains lambda times ((c+2)/(c+1))^2.
    {
        const SourceParams p = point(0.03, 0.9, 0.01);
        const double lambda = 0.03 / 1.03;
        const double ratio = gap(Configuration::unheralded, p, 6) / gap(Configuration::unheralded, p, 5);
        CHECK(ratio > lambda);
        CHECK(ratio == doctest::Approx(lambda * 64.0 / 49.0).epsilon(0.05));
    }
}
