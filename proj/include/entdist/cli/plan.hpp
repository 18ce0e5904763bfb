// SPDX-License-Identifier: MIT
#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "entdist/oracle.hpp"
#include "entdist/params.hpp"

namespace entdist::cli {

enum class Command { eval, sweep, table, figure, gmax, verify };
enum class Format { csv, json };

// Bad flags, keys, or values; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::array<std::string_view, 9> param_names{
    "delta_g", "eta_t", "eta_r", "n_islands", "n_memories",
    "pump_rate", "dark_per_gate", "n_b", "m_b"};

struct SweepAxis {
    std::string name;
    std::vector<double> values;
};

struct RunPlan {
    Command command = Command::eval;
    SourceParams base;
    std::vector<Configuration> configs{Configuration::zalm, Configuration::chahine,
                                       Configuration::unheralded};
    std::optional<SweepAxis> axis;
    std::string out_path;  // empty: stdout
    Format format = Format::csv;
    oracle::OracleSettings oracle;
    double b_min = 0.999;
    double f_min = 0.99;
    int table = 0;
    std::string figure;
    std::string plot_script;
    // Keys given by flag or params file, so command defaults know what to
    // leave alone.
    std::set<std::string> set_keys;

    [[nodiscard]] bool given(std::string_view key) const {
        return set_keys.count(std::string(key)) > 0;
    }
};

// Returns nullopt after printing help to `out`. Throws UsageError or
// ParameterError.
[[nodiscard]] std::optional<RunPlan> parse(const std::vector<std::string>& args, std::ostream& out);

// "name=start:stop:step" or "name=v1,v2,...".
[[nodiscard]] SweepAxis parse_axis(std::string_view text);

void set_param(SourceParams& params, std::string_view key, double value);
[[nodiscard]] double get_param(const SourceParams& params, std::string_view key);
[[nodiscard]] bool is_param(std::string_view key);

}  // namespace entdist::cli
