// SPDX-License-Identifier: MIT
#pragma once

#include <array>
#include <optional>

#include "entdist/params.hpp"

namespace entdist {

struct BellProjections {
    double psi_minus = 0.0;
    double psi_plus = 0.0;
    double phi_plus = 0.0;
    double phi_minus = 0.0;

    [[nodiscard]] double sum() const { return psi_minus + psi_plus + phi_plus + phi_minus; }
};

// Heralded configurations are conditioned on a psi- herald; unheralded
// values are unconditional. fraction/fidelity are empty when their
// denominators vanish.
struct BellDecomposition {
    double psi_minus = 0.0;
    double psi_plus = 0.0;
    double phi_plus = 0.0;
    double phi_minus = 0.0;
    double pr_bell = 0.0;
    double pr_loadable = 0.0;
    std::optional<double> fraction;
    std::optional<double> fidelity;
    // Pr(Bell) from the collected polynomial, kept as a redundancy check
    // against the sum of the four projections.
    double pr_bell_polynomial = 0.0;

    [[nodiscard]] BellProjections projections() const {
        return {psi_minus, psi_plus, phi_plus, phi_minus};
    }
};

[[nodiscard]] double pr_loadable(Configuration config, const SourceParams& params);
[[nodiscard]] BellDecomposition bell_decomposition(Configuration config, const SourceParams& params);

// Bell-basis diagonal (psi-, psi+, phi+, phi-) of the delivered state.
// Throws std::domain_error when pr_bell is zero.
[[nodiscard]] std::array<double, 4> werner_weights(const BellDecomposition& decomposition);

// Fills pr_bell, fraction and fidelity from the projections and loadable
// probability.
[[nodiscard]] BellDecomposition assemble(const BellProjections& projections, double pr_loadable);

// The two formula families. The dispatching functions above pick the
// background family whenever n_b > 0 or m_b > 0; with n_b = m_b = 0 both
// families give bitwise-identical results.
namespace closed_form {

[[nodiscard]] double loadable_plain(Configuration config, const SourceParams& params);
[[nodiscard]] double loadable_background(Configuration config, const SourceParams& params);
[[nodiscard]] BellProjections projections_plain(Configuration config, const SourceParams& params);
[[nodiscard]] BellProjections projections_background(Configuration config, const SourceParams& params);
[[nodiscard]] double pr_bell_polynomial_plain(Configuration config, const SourceParams& params);
[[nodiscard]] double pr_bell_polynomial_background(Configuration config, const SourceParams& params);

}  // namespace closed_form

}  // namespace entdist
