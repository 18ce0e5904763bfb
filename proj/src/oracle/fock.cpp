// SPDX-License-Identifier: MIT
#include "entdist/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace entdist::fock {

namespace {

std::size_t ipow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

struct Layout {
    int modes;
    int cutoff;
    std::size_t levels;
    std::size_t dim;

    Layout(int m, int c) : modes(m), cutoff(c), levels(c + 1), dim(ipow(c + 1, m)) {}

    [[nodiscard]] std::size_t stride(int mode) const { return ipow(levels, modes - 1 - mode); }
    [[nodiscard]] int digit(std::size_t index, int mode) const {
        return static_cast<int>((index / stride(mode)) % levels);
    }
    // Index in this layout of a reduced index (mode removed) with the mode
    // set to n.
    [[nodiscard]] std::size_t insert(std::size_t reduced, int mode, int n) const {
        const std::size_t s = stride(mode);
        return (reduced / s) * levels * s + static_cast<std::size_t>(n) * s + reduced % s;
    }
};

void check_mode(const Layout& l, int mode, const char* what) {
    if (mode < 0 || mode >= l.modes) {
        throw FockError(std::string(what) + ": mode " + std::to_string(mode) + " out of range");
    }
}

// coef[(a * L + b) * L + p]: amplitude of |p, a+b-p> from |a, b>.
std::vector<double> beam_splitter_table(int cutoff, double transmissivity) {
    const int levels = cutoff + 1;
    const double t = std::sqrt(transmissivity);
    const double r = std::sqrt(1.0 - transmissivity);
    std::vector<double> fact(2 * levels + 1, 1.0);
    for (std::size_t i = 1; i < fact.size(); ++i) fact[i] = fact[i - 1] * static_cast<double>(i);
    auto choose = [&](int n, int k) { return fact[n] / (fact[k] * fact[n - k]); };

    std::vector<double> coef(ipow(levels, 3), 0.0);
    for (int a = 0; a < levels; ++a) {
        for (int b = 0; b < levels; ++b) {
            for (int p = 0; p <= std::min(cutoff, a + b); ++p) {
                const int q = a + b - p;
                if (q > cutoff) continue;
                double sum = 0.0;
                // k photons of mode i stay, l = p - k photons of mode j cross.
                for (int k = std::max(0, p - b); k <= std::min(a, p); ++k) {
                    const int l = p - k;
                    const double term = choose(a, k) * choose(b, l) *
                                        std::pow(t, k + b - l) * std::pow(r, a - k + l);
                    sum += (l % 2 == 0) ? term : -term;
                }
                coef[(a * levels + b) * levels + p] =
                    sum * std::sqrt(fact[p] * fact[q] / (fact[a] * fact[b]));
            }
        }
    }
    return coef;
}

// Applies the beam splitter to one vector of length layout.dim whose
// element k lives at data[k * elem_stride].
std::vector<std::size_t> pair_bases(const Layout& l, int mi, int mj) {
    std::vector<std::size_t> bases;
    for (std::size_t idx = 0; idx < l.dim; ++idx) {
        if (l.digit(idx, mi) == 0 && l.digit(idx, mj) == 0) bases.push_back(idx);
    }
    return bases;
}

void transform(complex* data, std::size_t elem_stride, const Layout& l, int mi, int mj,
               const std::vector<std::size_t>& bases, const std::vector<double>& coef,
               std::vector<complex>& in) {
    const std::size_t si = l.stride(mi);
    const std::size_t sj = l.stride(mj);
    const int levels = static_cast<int>(l.levels);
    for (std::size_t k = 0; k < l.dim; ++k) {
        in[k] = data[k * elem_stride];
        data[k * elem_stride] = 0.0;
    }
    for (const std::size_t base : bases) {
        for (int a = 0; a < levels; ++a) {
            for (int b = 0; b < levels; ++b) {
                const complex amp = in[base + a * si + b * sj];
                if (amp == 0.0) continue;
                for (int p = 0; p <= std::min(l.cutoff, a + b); ++p) {
                    const int q = a + b - p;
                    if (q > l.cutoff) continue;
                    data[(base + p * si + q * sj) * elem_stride] +=
                        coef[(a * levels + b) * levels + p] * amp;
                }
            }
        }
    }
}

void check_pair(const Layout& l, int mi, int mj, double transmissivity) {
    check_mode(l, mi, "apply_beam_splitter");
    check_mode(l, mj, "apply_beam_splitter");
    if (mi == mj) throw FockError("apply_beam_splitter: modes must be distinct");
    if (!(transmissivity >= 0.0 && transmissivity <= 1.0)) {
        throw FockError("apply_beam_splitter: transmissivity must lie in [0, 1]");
    }
}

}  // namespace

double FockPure::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return s;
}

complex FockPure::amplitude(std::span<const int> occupations) const {
    return amplitudes[flat_index(occupations, cutoff)];
}

std::size_t FockDensity::dimension() const { return ipow(cutoff + 1, mode_count); }

double FockDensity::trace() const {
    const std::size_t dim = dimension();
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) s += entries[k * dim + k].real();
    return s;
}

complex FockDensity::element(std::span<const int> ket, std::span<const int> bra) const {
    return entries[flat_index(ket, cutoff) * dimension() + flat_index(bra, cutoff)];
}

std::size_t flat_index(std::span<const int> occupations, int cutoff) {
    std::size_t index = 0;
    for (int n : occupations) {
        if (n < 0 || n > cutoff) throw FockError("occupation outside the truncated space");
        index = index * static_cast<std::size_t>(cutoff + 1) + static_cast<std::size_t>(n);
    }
    return index;
}

FockPure vacuum(int mode_count, int cutoff) {
    FockPure s{mode_count, cutoff, std::vector<complex>(ipow(cutoff + 1, mode_count)), 0.0};
    s.amplitudes[0] = 1.0;
    return s;
}

FockPure tmsv_state(double delta_g, int cutoff, bool alternating_sign) {
    FockPure s = vacuum(2, cutoff);
    s.amplitudes[0] = 0.0;
    const double g = 1.0 + delta_g;
    const double ratio = delta_g / g;
    double p = 1.0 / g;
    for (int m = 0; m <= cutoff; ++m) {
        const double amp = std::sqrt(p);
        s.amplitudes[static_cast<std::size_t>(m) * (cutoff + 1) + m] =
            (alternating_sign && m % 2 == 1) ? -amp : amp;
        p *= ratio;
    }
    s.leaked = std::pow(ratio, cutoff + 1);
    return s;
}

FockDensity thermal_state(double mean, int cutoff) {
    FockDensity s{1, cutoff, std::vector<complex>(ipow(cutoff + 1, 2)), 0.0};
    const double ratio = mean / (1.0 + mean);
    double p = 1.0 / (1.0 + mean);
    for (int n = 0; n <= cutoff; ++n) {
        s.entries[static_cast<std::size_t>(n) * (cutoff + 1) + n] = p;
        p *= ratio;
    }
    s.leaked = std::pow(ratio, cutoff + 1);
    return s;
}

FockPure tensor(const FockPure& a, const FockPure& b) {
    if (a.cutoff != b.cutoff) throw FockError("tensor: cutoffs differ");
    FockPure s{a.mode_count + b.mode_count, a.cutoff, {}, 0.0};
    s.amplitudes.reserve(a.dimension() * b.dimension());
    for (const auto& x : a.amplitudes) {
        for (const auto& y : b.amplitudes) s.amplitudes.push_back(x * y);
    }
    const double na = a.norm_squared();
    const double nb = b.norm_squared();
    s.leaked = (na + a.leaked) * (nb + b.leaked) - na * nb;
    return s;
}

FockDensity tensor(const FockDensity& a, const FockDensity& b) {
    if (a.cutoff != b.cutoff) throw FockError("tensor: cutoffs differ");
    const std::size_t da = a.dimension();
    const std::size_t db = b.dimension();
    const std::size_t dim = da * db;
    FockDensity s{a.mode_count + b.mode_count, a.cutoff, std::vector<complex>(dim * dim), 0.0};
    for (std::size_t ka = 0; ka < da; ++ka) {
        for (std::size_t ba = 0; ba < da; ++ba) {
            const complex x = a.entries[ka * da + ba];
            if (x == 0.0) continue;
            for (std::size_t kb = 0; kb < db; ++kb) {
                for (std::size_t bb = 0; bb < db; ++bb) {
                    s.entries[(ka * db + kb) * dim + (ba * db + bb)] = x * b.entries[kb * db + bb];
                }
            }
        }
    }
    const double ta = a.trace();
    const double tb = b.trace();
    s.leaked = (ta + a.leaked) * (tb + b.leaked) - ta * tb;
    return s;
}

FockDensity to_density(const FockPure& state) {
    const std::size_t dim = state.dimension();
    FockDensity s{state.mode_count, state.cutoff, std::vector<complex>(dim * dim), state.leaked};
    for (std::size_t k = 0; k < dim; ++k) {
        if (state.amplitudes[k] == 0.0) continue;
        for (std::size_t b = 0; b < dim; ++b) {
            s.entries[k * dim + b] = state.amplitudes[k] * std::conj(state.amplitudes[b]);
        }
    }
    return s;
}

FockPure permute_modes(const FockPure& state, std::span<const int> order) {
    const Layout l(state.mode_count, state.cutoff);
    if (static_cast<int>(order.size()) != l.modes) throw FockError("permute_modes: bad order");
    std::vector<int> sorted(order.begin(), order.end());
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k < l.modes; ++k) {
        if (sorted[k] != k) throw FockError("permute_modes: order is not a permutation");
    }
    FockPure out{state.mode_count, state.cutoff, std::vector<complex>(l.dim), state.leaked};
    for (std::size_t idx = 0; idx < l.dim; ++idx) {
        std::size_t target = 0;
        for (int k = 0; k < l.modes; ++k) target = target * l.levels + l.digit(idx, order[k]);
        out.amplitudes[target] = state.amplitudes[idx];
    }
    return out;
}

FockPure apply_beam_splitter(const FockPure& state, int mode_i, int mode_j, double transmissivity) {
    const Layout l(state.mode_count, state.cutoff);
    check_pair(l, mode_i, mode_j, transmissivity);
    const auto coef = beam_splitter_table(l.cutoff, transmissivity);
    FockPure out = state;
    std::vector<complex> buffer(l.dim);
    transform(out.amplitudes.data(), 1, l, mode_i, mode_j, pair_bases(l, mode_i, mode_j), coef,
              buffer);
    out.leaked += std::max(0.0, state.norm_squared() - out.norm_squared());
    return out;
}

FockDensity apply_beam_splitter(const FockDensity& state, int mode_i, int mode_j,
                                double transmissivity) {
    const Layout l(state.mode_count, state.cutoff);
    check_pair(l, mode_i, mode_j, transmissivity);
    const auto coef = beam_splitter_table(l.cutoff, transmissivity);
    FockDensity out = state;
    std::vector<complex> buffer(l.dim);
    const auto bases = pair_bases(l, mode_i, mode_j);
    // The transformation is real, so rho -> U rho U^T: columns, then rows.
    for (std::size_t bra = 0; bra < l.dim; ++bra) {
        transform(out.entries.data() + bra, l.dim, l, mode_i, mode_j, bases, coef, buffer);
    }
    for (std::size_t ket = 0; ket < l.dim; ++ket) {
        transform(out.entries.data() + ket * l.dim, 1, l, mode_i, mode_j, bases, coef, buffer);
    }
    out.leaked += std::max(0.0, state.trace() - out.trace());
    return out;
}

FockDensity apply_loss(const FockDensity& state, int mode, double eta, double thermal_mean) {
    check_mode(Layout(state.mode_count, state.cutoff), mode, "apply_loss");
    if (!(eta >= 0.0 && eta <= 1.0)) throw FockError("apply_loss: eta must lie in [0, 1]");
    if (!(thermal_mean >= 0.0)) throw FockError("apply_loss: thermal mean must be >= 0");
    const FockDensity joint = tensor(state, thermal_state(thermal_mean, state.cutoff));
    return partial_trace(apply_beam_splitter(joint, mode, state.mode_count, eta), state.mode_count);
}

FockPure apply_loss_dilated(const FockPure& state, int mode, double eta) {
    check_mode(Layout(state.mode_count, state.cutoff), mode, "apply_loss_dilated");
    return apply_beam_splitter(tensor(state, vacuum(1, state.cutoff)), mode, state.mode_count, eta);
}

Projection pnr_project(const FockDensity& state, int mode, PnrOutcome outcome) {
    const Layout l(state.mode_count, state.cutoff);
    check_mode(l, mode, "pnr_project");
    const Layout r(state.mode_count - 1, state.cutoff);
    int first = 0;
    int last = l.cutoff;
    if (outcome == PnrOutcome::zero) last = 0;
    if (outcome == PnrOutcome::one) first = last = std::min(1, l.cutoff);
    if (outcome == PnrOutcome::many) first = 2;

    Projection p{FockDensity{r.modes, r.cutoff, std::vector<complex>(r.dim * r.dim), state.leaked},
                 0.0};
    if (outcome == PnrOutcome::one && l.cutoff < 1) return p;
    for (int n = first; n <= last; ++n) {
        for (std::size_t k = 0; k < r.dim; ++k) {
            const std::size_t fk = l.insert(k, mode, n);
            for (std::size_t b = 0; b < r.dim; ++b) {
                p.state.entries[k * r.dim + b] += state.entries[fk * l.dim + l.insert(b, mode, n)];
            }
        }
    }
    p.probability = p.state.trace();
    return p;
}

FockPure project_photon_number(const FockPure& state, int mode, int n) {
    const Layout l(state.mode_count, state.cutoff);
    check_mode(l, mode, "project_photon_number");
    const Layout r(state.mode_count - 1, state.cutoff);
    FockPure out{r.modes, r.cutoff, std::vector<complex>(r.dim), state.leaked};
    if (n < 0 || n > l.cutoff) return out;
    for (std::size_t k = 0; k < r.dim; ++k) out.amplitudes[k] = state.amplitudes[l.insert(k, mode, n)];
    return out;
}

FockDensity partial_trace(const FockDensity& state, int mode) {
    const Layout l(state.mode_count, state.cutoff);
    check_mode(l, mode, "partial_trace");
    const Layout r(state.mode_count - 1, state.cutoff);
    FockDensity out{r.modes, r.cutoff, std::vector<complex>(r.dim * r.dim), state.leaked};
    for (int n = 0; n <= l.cutoff; ++n) {
        for (std::size_t k = 0; k < r.dim; ++k) {
            const std::size_t fk = l.insert(k, mode, n);
            for (std::size_t b = 0; b < r.dim; ++b) {
                out.entries[k * r.dim + b] += state.entries[fk * l.dim + l.insert(b, mode, n)];
            }
        }
    }
    return out;
}

FockDensity reduce(const FockPure& state, std::span<const int> keep) {
    std::vector<int> order(keep.begin(), keep.end());
    for (int m = 0; m < state.mode_count; ++m) {
        if (std::find(keep.begin(), keep.end(), m) == keep.end()) order.push_back(m);
    }
    const FockPure p = permute_modes(state, order);
    const std::size_t dk = ipow(state.cutoff + 1, static_cast<int>(keep.size()));
    const std::size_t de = p.dimension() / dk;
    FockDensity out{static_cast<int>(keep.size()), state.cutoff, std::vector<complex>(dk * dk),
                    state.leaked};
    for (std::size_t k = 0; k < dk; ++k) {
        for (std::size_t b = 0; b < dk; ++b) {
            complex s = 0.0;
            for (std::size_t e = 0; e < de; ++e) {
                s += p.amplitudes[k * de + e] * std::conj(p.amplitudes[b * de + e]);
            }
            out.entries[k * dk + b] = s;
        }
    }
    return out;
}

FockDensity restrict_photons(const FockDensity& state, int max_photons) {
    const Layout l(state.mode_count, state.cutoff);
    const int m = std::min(max_photons, state.cutoff);
    const Layout r(state.mode_count, m);
    std::vector<std::size_t> map(r.dim);
    for (std::size_t idx = 0; idx < r.dim; ++idx) {
        std::size_t full = 0;
        for (int k = 0; k < r.modes; ++k) full = full * l.levels + r.digit(idx, k);
        map[idx] = full;
    }
    FockDensity out{r.modes, m, std::vector<complex>(r.dim * r.dim), state.leaked};
    for (std::size_t k = 0; k < r.dim; ++k) {
        for (std::size_t b = 0; b < r.dim; ++b) {
            out.entries[k * r.dim + b] = state.entries[map[k] * l.dim + map[b]];
        }
    }
    return out;
}

std::vector<double> photon_number_marginal(const FockPure& state, int mode_a, int mode_b) {
    const Layout l(state.mode_count, state.cutoff);
    check_mode(l, mode_a, "photon_number_marginal");
    check_mode(l, mode_b, "photon_number_marginal");
    std::vector<double> out(l.levels * l.levels, 0.0);
    for (std::size_t idx = 0; idx < l.dim; ++idx) {
        out[l.digit(idx, mode_a) * l.levels + l.digit(idx, mode_b)] += std::norm(state.amplitudes[idx]);
    }
    return out;
}

double vacuum_probability(const FockDensity& state, std::span<const int> modes) {
    const Layout l(state.mode_count, state.cutoff);
    double s = 0.0;
    for (std::size_t idx = 0; idx < l.dim; ++idx) {
        const bool empty = std::all_of(modes.begin(), modes.end(),
                                       [&](int m) { return l.digit(idx, m) == 0; });
        if (empty) s += state.entries[idx * l.dim + idx].real();
    }
    return s;
}

double expectation(const FockDensity& state, const FockPure& vector) {
    if (state.mode_count != vector.mode_count || state.cutoff != vector.cutoff) {
        throw FockError("expectation: vector and density shapes differ");
    }
    const std::size_t dim = state.dimension();
    std::vector<std::size_t> support;
    for (std::size_t k = 0; k < dim; ++k) {
        if (vector.amplitudes[k] != 0.0) support.push_back(k);
    }
    complex s = 0.0;
    for (auto k : support) {
        for (auto b : support) {
            s += std::conj(vector.amplitudes[k]) * state.entries[k * dim + b] * vector.amplitudes[b];
        }
    }
    return s.real();
}

complex coherent_matrix_element(const FockPure& state, std::span<const complex> alphas,
                                double tolerance) {
    const Layout l(state.mode_count, state.cutoff);
    if (static_cast<int>(alphas.size()) != l.modes) {
        throw FockError("coherent_matrix_element: need one amplitude per mode");
    }
    // factor[k][n] = exp(-|a|^2/2) conj(a)^n / sqrt(n!)
    std::vector<std::vector<complex>> factor(l.modes, std::vector<complex>(l.levels));
    for (int k = 0; k < l.modes; ++k) {
        const double mean = std::norm(alphas[k]);
        double captured = 0.0;
        double poisson = std::exp(-mean);
        complex f = std::exp(-mean / 2.0);
        for (int n = 0; n <= l.cutoff; ++n) {
            factor[k][n] = f;
            captured += poisson;
            poisson *= mean / (n + 1);
            f *= std::conj(alphas[k]) / std::sqrt(static_cast<double>(n + 1));
        }
        if (1.0 - captured > tolerance) {
            throw FockError("coherent_matrix_element: |alpha|^2 = " + std::to_string(mean) +
                            " leaves Poisson tail beyond the cutoff above tolerance");
        }
    }
    complex s = 0.0;
    for (std::size_t idx = 0; idx < l.dim; ++idx) {
        if (state.amplitudes[idx] == 0.0) continue;
        complex term = state.amplitudes[idx];
        for (int k = 0; k < l.modes; ++k) term *= factor[k][l.digit(idx, k)];
        s += term;
    }
    return s;
}

}  // namespace entdist::fock
