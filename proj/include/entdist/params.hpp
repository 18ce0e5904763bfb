// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace entdist {

enum class Configuration { zalm, chahine, unheralded };

inline constexpr Configuration all_configurations[] = {
    Configuration::zalm, Configuration::chahine, Configuration::unheralded};

[[nodiscard]] std::string_view to_string(Configuration config);
[[nodiscard]] std::optional<Configuration> parse_configuration(std::string_view text);

[[nodiscard]] constexpr bool is_heralded(Configuration config) {
    return config != Configuration::unheralded;
}

// Experiment knobs. delta_g is G-1, the mean pair number per island per pulse.
struct SourceParams {
    double delta_g = 0.0;
    double eta_t = 1.0;
    double eta_r = 1.0;
    int n_islands = 1;
    int n_memories = 1;
    double pump_rate = 1e9;
    double dark_per_gate = 0.0;  // dark rate times gate width
    double n_b = 0.0;
    int m_b = 0;

    [[nodiscard]] double gain() const { return 1.0 + delta_g; }
    [[nodiscard]] bool has_background() const { return n_b > 0.0 || m_b > 0; }

    friend bool operator==(const SourceParams&, const SourceParams&) = default;
};

class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Returns params unchanged, or throws ParameterError naming the field.
SourceParams validate(const SourceParams& params);

}  // namespace entdist
