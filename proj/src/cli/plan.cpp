// SPDX-License-Identifier: MIT
#include "entdist/cli/plan.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>

namespace entdist::cli {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double parse_number(std::string_view text, std::string_view what) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || end != t.data() + t.size()) {
        throw UsageError(std::string(what) + ": cannot parse number '" + t + "'");
    }
    return v;
}

int as_count(std::string_view key, double value) {
    if (value != std::floor(value) || std::fabs(value) > 1e9) {
        throw UsageError(std::string(key) + " must be an integer");
    }
    return static_cast<int>(value);
}

std::string flag_name(std::string_view key) {
    std::string f = "--" + std::string(key);
    std::replace(f.begin(), f.end(), '_', '-');
    return f;
}

// Keys other than SourceParams fields accepted in a params file.
constexpr std::array<std::string_view, 5> setting_names{"config", "b_min", "f_min", "cutoff",
                                                         "tolerance"};

void apply_setting(RunPlan& plan, std::string_view key, std::string_view value) {
    if (is_param(key)) {
        set_param(plan.base, key, parse_number(value, key));
    } else if (key == "config") {
        const std::string v = trim(value);
        if (v == "all") {
            plan.configs.assign(std::begin(all_configurations), std::end(all_configurations));
        } else if (auto c = parse_configuration(v)) {
            plan.configs = {*c};
        } else {
            throw UsageError("config: unknown configuration '" + v + "'");
        }
    } else if (key == "b_min") {
        plan.b_min = parse_number(value, key);
    } else if (key == "f_min") {
        plan.f_min = parse_number(value, key);
    } else if (key == "cutoff") {
        plan.oracle.cutoff = as_count(key, parse_number(value, key));
    } else if (key == "tolerance") {
        plan.oracle.tolerance = parse_number(value, key);
    } else {
        throw UsageError("unknown key '" + std::string(key) + "'");
    }
    plan.set_keys.insert(std::string(key));
}

void load_params_file(RunPlan& plan, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("--params: cannot open " + path);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string body = trim(std::string_view(line).substr(0, line.find('#')));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        const std::string where = path + ":" + std::to_string(number);
        if (eq == std::string::npos) throw UsageError(where + ": expected key=value");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const bool known = is_param(key) || std::find(setting_names.begin(), setting_names.end(),
                                                      key) != setting_names.end();
        if (!known) throw UsageError(where + ": unknown key '" + key + "'");
        try {
            apply_setting(plan, key, std::string_view(body).substr(eq + 1));
        } catch (const UsageError& e) {
            throw UsageError(where + ": " + e.what());
        }
    }
}

void check_axis(const RunPlan& plan) {
    if (!plan.axis) return;
    for (double v : plan.axis->values) {
        SourceParams p = plan.base;
        set_param(p, plan.axis->name, v);
        (void)validate(p);
    }
}

}  // namespace

bool is_param(std::string_view key) {
    return std::find(param_names.begin(), param_names.end(), key) != param_names.end();
}

void set_param(SourceParams& p, std::string_view key, double value) {
    if (key == "delta_g") p.delta_g = value;
    else if (key == "eta_t") p.eta_t = value;
    else if (key == "eta_r") p.eta_r = value;
    else if (key == "n_islands") p.n_islands = as_count(key, value);
    else if (key == "n_memories") p.n_memories = as_count(key, value);
    else if (key == "pump_rate") p.pump_rate = value;
    else if (key == "dark_per_gate") p.dark_per_gate = value;
    else if (key == "n_b") p.n_b = value;
    else if (key == "m_b") p.m_b = as_count(key, value);
    else throw UsageError("unknown parameter '" + std::string(key) + "'");
}

double get_param(const SourceParams& p, std::string_view key) {
    if (key == "delta_g") return p.delta_g;
    if (key == "eta_t") return p.eta_t;
    if (key == "eta_r") return p.eta_r;
    if (key == "n_islands") return p.n_islands;
    if (key == "n_memories") return p.n_memories;
    if (key == "pump_rate") return p.pump_rate;
    if (key == "dark_per_gate") return p.dark_per_gate;
    if (key == "n_b") return p.n_b;
    if (key == "m_b") return p.m_b;
    throw UsageError("unknown parameter '" + std::string(key) + "'");
}

SweepAxis parse_axis(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw UsageError("--vary: expected name=start:stop:step");
    SweepAxis axis;
    axis.name = trim(text.substr(0, eq));
    if (!is_param(axis.name)) throw UsageError("--vary: unknown parameter '" + axis.name + "'");
    const std::string_view body = text.substr(eq + 1);
    if (body.find(':') != std::string_view::npos) {
        std::vector<double> parts;
        std::size_t start = 0;
        while (true) {
            const auto colon = body.find(':', start);
            parts.push_back(parse_number(body.substr(start, colon - start), "--vary"));
            if (colon == std::string_view::npos) break;
            start = colon + 1;
        }
        if (parts.size() != 3) throw UsageError("--vary: expected name=start:stop:step");
        const double lo = parts[0], hi = parts[1], step = parts[2];
        if (!(step > 0.0)) throw UsageError("--vary: step must be > 0");
        if (!(lo <= hi)) throw UsageError("--vary: start must be <= stop");
        // Points are start + k*step; the small slack keeps stop when it is
        // a decimal multiple of step.
        const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
        for (std::size_t k = 0; k < count; ++k) axis.values.push_back(lo + step * k);
    } else {
        std::size_t start = 0;
        while (true) {
            const auto comma = body.find(',', start);
            axis.values.push_back(parse_number(body.substr(start, comma - start), "--vary"));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
    }
    return axis;
}

std::optional<RunPlan> parse(const std::vector<std::string>& args, std::ostream& out) {
    CLI::App app{"Entanglement distribution model for ZALM, Chahine, and unheralded sources",
                 "entdist"};
    app.require_subcommand(1);
    app.fallthrough();

    std::map<std::string, double> numbers;
    std::map<std::string, CLI::Option*> number_options;
    for (std::string_view key : param_names) {
        const std::string k(key);
        number_options[k] = app.add_option(flag_name(key), numbers[k]);
    }
    for (std::string_view key : {"b_min", "f_min", "tolerance"}) {
        const std::string k(key);
        number_options[k] = app.add_option(flag_name(key), numbers[k]);
    }
    number_options["cutoff"] = app.add_option("--cutoff", numbers["cutoff"], "Fock cutoff for verify");

    std::string config_text, vary_text, params_path, format_text, out_path, plot_path;
    auto* config_opt = app.add_option("--config", config_text, "zalm|chahine|unheralded|all");
    auto* vary_opt = app.add_option("--vary", vary_text, "name=start:stop:step or name=v1,v2,...");
    auto* format_opt = app.add_option("--format", format_text, "csv|json")
                           ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--params", params_path, "file of key=value lines");
    app.add_option("--out", out_path, "output path (default stdout)");
    app.add_option("--plot-script", plot_path, "figure only: write a matplotlib script");

    auto* eval = app.add_subcommand("eval", "all metrics at one parameter point");
    auto* sweep = app.add_subcommand("sweep", "all metrics along one --vary axis");
    auto* table = app.add_subcommand("table", "reproduce a results table (1-4)");
    int table_number = 0;
    table->add_option("number", table_number)->required()->check(CLI::Range(1, 4));
    auto* figure = app.add_subcommand("figure", "curve data for a figure, by number or slug");
    std::string figure_key;
    figure->add_option("figure", figure_key)->required();
    auto* gmax = app.add_subcommand("gmax", "largest delta_g meeting fraction and fidelity floors");
    auto* verify = app.add_subcommand("verify", "closed forms against the Fock-space oracle");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    RunPlan plan;
    if (eval->parsed()) plan.command = Command::eval;
    if (sweep->parsed()) plan.command = Command::sweep;
    if (table->parsed()) plan.command = Command::table;
    if (figure->parsed()) plan.command = Command::figure;
    if (gmax->parsed()) plan.command = Command::gmax;
    if (verify->parsed()) plan.command = Command::verify;
    plan.table = table_number;
    plan.figure = figure_key;
    plan.format = plan.command == Command::eval ? Format::json : Format::csv;

    if (!params_path.empty()) load_params_file(plan, params_path);
    for (const auto& [key, opt] : number_options) {
        if (opt->count() == 0) continue;
        const double v = numbers[key];
        if (is_param(key)) {
            set_param(plan.base, key, v);
        } else if (key == "b_min") {
            plan.b_min = v;
        } else if (key == "f_min") {
            plan.f_min = v;
        } else if (key == "tolerance") {
            plan.oracle.tolerance = v;
        } else if (key == "cutoff") {
            plan.oracle.cutoff = as_count(key, v);
        }
        plan.set_keys.insert(key);
    }
    if (config_opt->count() > 0) apply_setting(plan, "config", config_text);
    if (format_opt->count() > 0) plan.format = format_text == "json" ? Format::json : Format::csv;
    if (vary_opt->count() > 0) plan.axis = parse_axis(vary_text);
    plan.out_path = out_path;
    plan.plot_script = plot_path;

    if (plan.oracle.cutoff < 2) throw UsageError("cutoff must be >= 2");
    if (!(plan.oracle.tolerance > 0.0)) throw UsageError("tolerance must be > 0");
    if (plan.command == Command::sweep && !plan.axis) throw UsageError("sweep requires --vary");
    if (!plan.plot_script.empty() && plan.command != Command::figure) {
        throw UsageError("--plot-script applies to figure only");
    }
    (void)validate(plan.base);
    check_axis(plan);
    plan.oracle.params = plan.base;
    return plan;
}

}  // namespace entdist::cli
