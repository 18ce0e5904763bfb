// SPDX-License-Identifier: MIT
#include "entdist/params.hpp"

#include <cmath>

namespace entdist {

std::string_view to_string(Configuration config) {
    switch (config) {
        case Configuration::zalm: return "zalm";
        case Configuration::chahine: return "chahine";
        case Configuration::unheralded: return "unheralded";
    }
    return "unknown";
}

std::optional<Configuration> parse_configuration(std::string_view text) {
    for (auto config : all_configurations) {
        if (to_string(config) == text) return config;
    }
    return std::nullopt;
}

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ParameterError(message);
}

}  // namespace

SourceParams validate(const SourceParams& p) {
    require(std::isfinite(p.delta_g) && p.delta_g >= 0.0, "delta_g must be ≥ 0");
    require(std::isfinite(p.eta_t) && p.eta_t > 0.0 && p.eta_t <= 1.0,
            "eta_t must be in (0, 1]");
    require(std::isfinite(p.eta_r) && p.eta_r > 0.0 && p.eta_r <= 1.0,
            "eta_r must be in (0, 1]");
    require(p.n_islands >= 1, "n_islands must be ≥ 1");
    require(p.n_memories >= 1, "n_memories must be ≥ 1");
    require(p.n_memories <= p.n_islands,
            "n_memories ≤ n_islands violated (n_memories=" + std::to_string(p.n_memories) +
                ", n_islands=" + std::to_string(p.n_islands) + ")");
    require(std::isfinite(p.pump_rate) && p.pump_rate > 0.0, "pump_rate must be > 0");
    require(std::isfinite(p.dark_per_gate) && p.dark_per_gate >= 0.0,
            "dark_per_gate must be ≥ 0");
    require(std::isfinite(p.n_b) && p.n_b >= 0.0, "n_b must be ≥ 0");
    require(p.m_b >= 0, "m_b must be ≥ 0");
    return p;
}

}  // namespace entdist
