// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace entdist::fock {

using complex = std::complex<double>;

// Multimode state truncated at `cutoff` photons per mode. Mode 0 is the
// slowest-varying index. `leaked` accumulates probability lost to the
// truncation, so norm + leaked stays equal to the starting norm.
struct FockPure {
    int mode_count = 0;
    int cutoff = 0;
    std::vector<complex> amplitudes;
    double leaked = 0.0;

    [[nodiscard]] std::size_t dimension() const { return amplitudes.size(); }
    [[nodiscard]] double norm_squared() const;
    [[nodiscard]] complex amplitude(std::span<const int> occupations) const;
};

// Density operator; entries[ket * dimension + bra].
struct FockDensity {
    int mode_count = 0;
    int cutoff = 0;
    std::vector<complex> entries;
    double leaked = 0.0;

    [[nodiscard]] std::size_t dimension() const;
    [[nodiscard]] double trace() const;
    [[nodiscard]] complex element(std::span<const int> ket, std::span<const int> bra) const;
};

class FockError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

[[nodiscard]] std::size_t flat_index(std::span<const int> occupations, int cutoff);

[[nodiscard]] FockPure vacuum(int mode_count, int cutoff);
[[nodiscard]] FockPure tmsv_state(double delta_g, int cutoff, bool alternating_sign);
[[nodiscard]] FockDensity thermal_state(double mean, int cutoff);

[[nodiscard]] FockPure tensor(const FockPure& a, const FockPure& b);
[[nodiscard]] FockDensity tensor(const FockDensity& a, const FockDensity& b);
[[nodiscard]] FockDensity to_density(const FockPure& state);
// order[k] is the old index of new mode k.
[[nodiscard]] FockPure permute_modes(const FockPure& state, std::span<const int> order);

// a_i -> t a_i + r a_j, a_j -> -r a_i + t a_j with t = sqrt(transmissivity).
[[nodiscard]] FockPure apply_beam_splitter(const FockPure& state, int mode_i, int mode_j,
                                           double transmissivity);
[[nodiscard]] FockDensity apply_beam_splitter(const FockDensity& state, int mode_i, int mode_j,
                                              double transmissivity);

// Loss through a beam splitter whose other port holds a thermal state of the
// given mean; the ancilla is traced out.
[[nodiscard]] FockDensity apply_loss(const FockDensity& state, int mode, double eta,
                                     double thermal_mean);
// Pure loss kept as a purification: appends the vacuum environment as the
// last mode instead of tracing it out.
[[nodiscard]] FockPure apply_loss_dilated(const FockPure& state, int mode, double eta);

enum class PnrOutcome { zero, one, many };

struct Projection {
    FockDensity state;  // unnormalized, measured mode removed
    double probability = 0.0;
};

[[nodiscard]] Projection pnr_project(const FockDensity& state, int mode, PnrOutcome outcome);
// Projects a pure state's mode onto photon number n and removes the mode.
[[nodiscard]] FockPure project_photon_number(const FockPure& state, int mode, int n);

[[nodiscard]] FockDensity partial_trace(const FockDensity& state, int mode);
// Reduced density of the listed modes, in the listed order.
[[nodiscard]] FockDensity reduce(const FockPure& state, std::span<const int> keep);
// Restriction to at most `max_photons` per mode (a projection, not a trace).
[[nodiscard]] FockDensity restrict_photons(const FockDensity& state, int max_photons);

// Joint photon-number distribution of two modes; result[a * (cutoff+1) + b].
[[nodiscard]] std::vector<double> photon_number_marginal(const FockPure& state, int mode_a,
                                                         int mode_b);
[[nodiscard]] double vacuum_probability(const FockDensity& state, std::span<const int> modes);
[[nodiscard]] double expectation(const FockDensity& state, const FockPure& vector);

// <alpha|psi> for a product coherent state. Throws FockError if some mode's
// Poisson tail beyond the cutoff exceeds `tolerance`.
[[nodiscard]] complex coherent_matrix_element(const FockPure& state,
                                              std::span<const complex> alphas,
                                              double tolerance = 1e-8);

}  // namespace entdist::fock
