// SPDX-License-Identifier: MIT
#include "entdist/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

namespace entdist::oracle {

namespace {

using fock::FockDensity;
using fock::FockPure;

int count_class(int n) { return n >= 2 ? 2 : n; }

struct Block {
    FockDensity signal;              // (Alice mode, Bob mode) at the receivers
    double pattern_probability = 1.0;
    std::vector<double> marginal;    // idler photon numbers before the herald
    double leaked = 0.0;
};

// Both signal modes cross the free-space link with background on the
// loss port.
FockDensity through_links(FockDensity rho, const SourceParams& p) {
    rho = fock::apply_loss(rho, 0, p.eta_r, p.n_b);
    return fock::apply_loss(rho, 1, p.eta_r, p.n_b);
}

// Two sources' pairs in one polarization: (S1, I1, S2, I2). The idlers meet
// on a 50-50 splitter whose outputs are detected with efficiency eta_t.
FockPure zalm_idler_chain(const SourceParams& p, int cutoff) {
    const FockPure pair = fock::tmsv_state(p.delta_g, cutoff, false);
    FockPure s = fock::tensor(pair, pair);
    s = fock::apply_beam_splitter(s, 1, 3, 0.5);
    s = fock::apply_loss_dilated(s, 1, p.eta_t);
    return fock::apply_loss_dilated(s, 3, p.eta_t);
}

Block zalm_block(const SourceParams& p, int cutoff, int plus, int minus) {
    FockPure s = zalm_idler_chain(p, cutoff);
    Block b;
    b.marginal = fock::photon_number_marginal(s, 1, 3);
    s = fock::project_photon_number(s, 3, minus);
    s = fock::project_photon_number(s, 1, plus);
    const std::array<int, 2> signals{0, 1};
    FockDensity rho = fock::reduce(s, signals);
    b.pattern_probability = rho.trace();
    b.signal = through_links(std::move(rho), p);
    b.leaked = b.signal.leaked;
    return b;
}

// One source in one polarization: (S, I); the idler is detected with
// efficiency eta_t and the signal meets an empty port on a 50-50 splitter,
// entering from port 1 (H) or port 2 (V).
FockPure chahine_idler_chain(const SourceParams& p, int cutoff) {
    return fock::apply_loss_dilated(fock::tmsv_state(p.delta_g, cutoff, false), 1, p.eta_t);
}

Block chahine_block(const SourceParams& p, int cutoff, bool first_port) {
    FockPure s = chahine_idler_chain(p, cutoff);
    Block b;
    b.marginal = fock::photon_number_marginal(s, 1, 1);
    s = fock::project_photon_number(s, 1, 1);
    const std::array<int, 1> signal{0};
    const FockDensity rho = fock::reduce(s, signal);
    b.pattern_probability = rho.trace();
    const FockDensity empty = fock::to_density(fock::vacuum(1, cutoff));
    FockDensity joint = first_port ? fock::tensor(rho, empty) : fock::tensor(empty, rho);
    joint = fock::apply_beam_splitter(joint, 0, 1, 0.5);
    b.signal = through_links(std::move(joint), p);
    b.leaked = b.signal.leaked;
    return b;
}

// Alice holds the signal, Bob the idler.
Block unheralded_block(const SourceParams& p, int cutoff, bool alternating) {
    Block b;
    b.signal = through_links(fock::to_density(fock::tmsv_state(p.delta_g, cutoff, alternating)), p);
    b.leaked = b.signal.leaked;
    return b;
}

ClickPmf click_pmf(const std::vector<double>& marginal, int cutoff, int detectors) {
    const int levels = cutoff + 1;
    ClickPmf c{detectors, std::vector<double>(detectors == 2 ? 9 : 3, 0.0)};
    for (int a = 0; a < levels; ++a) {
        for (int b = 0; b < levels; ++b) {
            const double w = marginal[a * levels + b];
            if (detectors == 2) {
                c.probabilities[count_class(a) * 3 + count_class(b)] += w;
            } else if (a == b) {
                c.probabilities[count_class(a)] += w;
            }
        }
    }
    return c;
}

void check(const OracleSettings& s) {
    if (s.cutoff < 2) throw fock::FockError("oracle cutoff must be >= 2");
    validate(s.params);
}

void check_leak(double leaked, const OracleSettings& s) {
    if (leaked > s.tolerance) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "cutoff %d leaks %.3g of probability, above tolerance %.3g; increase the cutoff",
                      s.cutoff, leaked, s.tolerance);
        throw LeakageError(msg);
    }
}

FockDensity normalized(FockDensity rho, double trace) {
    for (auto& e : rho.entries) e /= trace;
    return rho;
}

// Probability of each (Alice empty, Bob empty) combination in one block,
// indexed [alice_empty][bob_empty]. Summed directly so truncated mass is left
// out rather than assigned to the occupied outcomes.
std::array<std::array<double, 2>, 2> emptiness(const FockDensity& rho) {
    const std::size_t levels = static_cast<std::size_t>(rho.cutoff) + 1;
    const std::size_t dim = rho.dimension();
    std::array<std::array<double, 2>, 2> out{};
    for (std::size_t idx = 0; idx < dim; ++idx) {
        const bool a_empty = idx / levels == 0;
        const bool b_empty = idx % levels == 0;
        out[a_empty][b_empty] += rho.entries[idx * dim + idx].real();
    }
    return out;
}

// Bell projections and loadable classification of two independent blocks
// holding (Alice, Bob) modes for the two polarizations of each party.
BellDecomposition classify(const FockDensity& first, const FockDensity& second,
                           const ModeMap& register_map, const SourceParams& p) {
    // Extraneous background modes are independent thermal modes; each party
    // has 2 M_B of them.
    const double log_empty = -2.0 * p.m_b * std::log1p(p.n_b);
    const double f2 = std::exp(log_empty);
    const double f4 = f2 * f2;
    const double stray = -std::expm1(log_empty);  // 1 - f2
    const auto e1 = emptiness(first);
    const auto e2 = emptiness(second);
    double loadable = 0.0;
    for (int a1 = 0; a1 < 2; ++a1)
        for (int b1 = 0; b1 < 2; ++b1)
            for (int a2 = 0; a2 < 2; ++a2)
                for (int b2 = 0; b2 < 2; ++b2) {
                    const double alice = (a1 && a2) ? stray : 1.0;
                    const double bob = (b1 && b2) ? stray : 1.0;
                    loadable += e1[a1][b1] * e2[a2][b2] * alice * bob;
                }

    const FockDensity joint =
        fock::tensor(fock::restrict_photons(first, 1), fock::restrict_photons(second, 1));
    BellProjections pr;
    pr.psi_minus = fock::expectation(joint, bell_vector(BellState::psi_minus, register_map)) * f4;
    pr.psi_plus = fock::expectation(joint, bell_vector(BellState::psi_plus, register_map)) * f4;
    pr.phi_plus = fock::expectation(joint, bell_vector(BellState::phi_plus, register_map)) * f4;
    pr.phi_minus = fock::expectation(joint, bell_vector(BellState::phi_minus, register_map)) * f4;
    return assemble(pr, loadable);
}

// Register of (Alice_H, Bob_H, Alice_V, Bob_V) for the heralded sources.
constexpr ModeMap heralded_register{0, 2, 1, 3};

OracleResult finish_heralded(const Block& h, const Block& v, double extra_trace,
                             const OracleSettings& s) {
    OracleResult r;
    r.leaked = std::max(h.leaked, v.leaked);
    check_leak(r.leaked, s);
    r.herald_probability = h.pattern_probability * v.pattern_probability * extra_trace;
    if (!(h.pattern_probability > 0.0 && v.pattern_probability > 0.0)) {
        r.conditional = false;
        return r;
    }
    r.decomposition = classify(normalized(h.signal, h.pattern_probability),
                               normalized(v.signal, v.pattern_probability), heralded_register,
                               s.params);
    return r;
}

double block_trace(const FockPure& chain) { return chain.norm_squared(); }

}  // namespace

FockPure bell_vector(BellState state, const ModeMap& m) {
    FockPure v = fock::vacuum(4, 1);
    v.amplitudes[0] = 0.0;
    auto ket = [](int x, int y) {
        std::array<int, 4> occ{0, 0, 0, 0};
        occ[x] = 1;
        occ[y] = 1;
        return fock::flat_index(occ, 1);
    };
    const double h = 1.0 / std::sqrt(2.0);
    switch (state) {
        case BellState::psi_minus:
        case BellState::psi_plus:
            v.amplitudes[ket(m.a_h, m.b_v)] = h;
            v.amplitudes[ket(m.a_v, m.b_h)] = state == BellState::psi_minus ? -h : h;
            break;
        case BellState::phi_plus:
        case BellState::phi_minus:
            v.amplitudes[ket(m.a_h, m.b_h)] = h;
            v.amplitudes[ket(m.a_v, m.b_v)] = state == BellState::phi_minus ? -h : h;
            break;
    }
    return v;
}

OracleResult oracle_zalm(const OracleSettings& s) {
    check(s);
    const SourceParams& p = s.params;
    // psi- : one count on the + port for H and on the - port for V.
    const int v_plus = s.herald == HeraldType::psi_minus ? 0 : 1;
    const Block h = zalm_block(p, s.cutoff, 1, 0);
    const Block v = zalm_block(p, s.cutoff, v_plus, 1 - v_plus);
    double extra = 1.0;
    if (s.wiring == IslandWiring::cross_island) {
        // Island n's V pair and island m's H pair are simulated but not used.
        extra = block_trace(zalm_idler_chain(p, s.cutoff)) * block_trace(zalm_idler_chain(p, s.cutoff));
    }
    OracleResult r = finish_heralded(h, v, extra, s);
    r.clicks = click_pmf(h.marginal, s.cutoff, 2);
    const ClickPmf v_clicks = click_pmf(v.marginal, s.cutoff, 2);
    r.herald_all_patterns = (r.clicks.probabilities[3] + r.clicks.probabilities[1]) *
                            (v_clicks.probabilities[3] + v_clicks.probabilities[1]);
    return r;
}

OracleResult oracle_chahine(const OracleSettings& s) {
    check(s);
    const SourceParams& p = s.params;
    const Block h = chahine_block(p, s.cutoff, true);
    const Block v = chahine_block(p, s.cutoff, false);
    double extra = 1.0;
    if (s.wiring == IslandWiring::cross_island) {
        extra = block_trace(chahine_idler_chain(p, s.cutoff)) *
                block_trace(chahine_idler_chain(p, s.cutoff));
    }
    OracleResult r = finish_heralded(h, v, extra, s);
    r.clicks = click_pmf(h.marginal, s.cutoff, 1);
    r.herald_all_patterns = r.herald_probability;
    return r;
}

OracleResult oracle_unheralded(const OracleSettings& s) {
    check(s);
    // (S_H, I_V) and (S_V, I_H); the second pair carries the (-1)^m sign.
    const Block first = unheralded_block(s.params, s.cutoff, false);
    const Block second = unheralded_block(s.params, s.cutoff, true);
    OracleResult r;
    r.leaked = std::max(first.leaked, second.leaked);
    check_leak(r.leaked, s);
    r.herald_probability = 1.0;
    r.herald_all_patterns = 1.0;
    r.decomposition = classify(first.signal, second.signal, ModeMap{0, 2, 3, 1}, s.params);
    return r;
}

OracleResult run_oracle(const OracleSettings& s) {
    switch (s.config) {
        case Configuration::zalm: return oracle_zalm(s);
        case Configuration::chahine: return oracle_chahine(s);
        case Configuration::unheralded: return oracle_unheralded(s);
    }
    return {};
}

DeclarationProb dark_convolve(const ClickPmf& clicks, double d) {
    const double quiet = std::exp(-d);
    const double single_dark = d * quiet;
    const int n = clicks.detectors;
    DeclarationProb out;
    for (std::size_t idx = 0; idx < clicks.probabilities.size(); ++idx) {
        std::vector<int> cls(n);
        std::size_t rest = idx;
        for (int k = n - 1; k >= 0; --k) {
            cls[k] = static_cast<int>(rest % 3);
            rest /= 3;
        }
        double declare = 0.0;
        for (int j = 0; j < n; ++j) {
            double term = cls[j] == 0 ? single_dark : (cls[j] == 1 ? quiet : 0.0);
            for (int i = 0; i < n; ++i) {
                if (i != j) term *= cls[i] == 0 ? quiet : 0.0;
            }
            declare += term;
        }
        const double w = clicks.probabilities[idx];
        out.q_total += w * declare;
        const int singles = static_cast<int>(std::count(cls.begin(), cls.end(), 1));
        const int empties = static_cast<int>(std::count(cls.begin(), cls.end(), 0));
        if (singles == 1 && empties == n - 1) out.q_photon += w * std::pow(quiet, n);
    }
    return out;
}

}  // namespace entdist::oracle
