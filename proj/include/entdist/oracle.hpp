// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <vector>

#include "entdist/bell.hpp"
#include "entdist/fock.hpp"
#include "entdist/herald.hpp"
#include "entdist/params.hpp"

namespace entdist::oracle {

// Heralds pairing H from island n with V from island m: same_island uses one
// island's two blocks, cross_island simulates both islands and discards the
// unused blocks.
enum class IslandWiring { same_island, cross_island };

// ZALM only: psi_plus heralds put both single counts on the same output port.
enum class HeraldType { psi_minus, psi_plus };

struct OracleSettings {
    int cutoff = 6;
    Configuration config = Configuration::zalm;
    SourceParams params;
    double tolerance = 1e-8;
    IslandWiring wiring = IslandWiring::same_island;
    HeraldType herald = HeraldType::psi_minus;
};

// Photon-count class (0, 1, or more) per idler detector of one island and
// polarization. Entry index is sum of class_d * 3^(detectors-1-d).
struct ClickPmf {
    int detectors = 1;
    std::vector<double> probabilities;
};

struct OracleResult {
    BellDecomposition decomposition;
    // False when the herald has zero probability, so nothing conditional is
    // defined and the decomposition is left empty.
    bool conditional = true;
    double herald_probability = 0.0;   // the simulated pattern, both polarizations
    double herald_all_patterns = 0.0;  // every photon pattern that declares a herald
    ClickPmf clicks;                   // H-polarized idler detectors
    double leaked = 0.0;               // largest truncation loss over the blocks
};

class LeakageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

[[nodiscard]] OracleResult oracle_zalm(const OracleSettings& settings);
[[nodiscard]] OracleResult oracle_chahine(const OracleSettings& settings);
[[nodiscard]] OracleResult oracle_unheralded(const OracleSettings& settings);
[[nodiscard]] OracleResult run_oracle(const OracleSettings& settings);

// Adds independent Poisson dark counts to each detector; a declaration is
// exactly one detector registering exactly one count, the rest none.
[[nodiscard]] DeclarationProb dark_convolve(const ClickPmf& clicks, double dark_per_gate);

enum class BellState { psi_minus, psi_plus, phi_plus, phi_minus };

// Positions of Alice's and Bob's H and V modes in a 4-mode register.
struct ModeMap {
    int a_h, a_v, b_h, b_v;
};

[[nodiscard]] fock::FockPure bell_vector(BellState state, const ModeMap& modes);

}  // namespace entdist::oracle
