// SPDX-License-Identifier: MIT
#include <algorithm>
#include <functional>

#include "entdist/bell.hpp"
#include "entdist/cli/commands.hpp"
#include "entdist/cli/parallel.hpp"
#include "entdist/herald.hpp"
#include "entdist/rate.hpp"
#include "entdist/threshold.hpp"

namespace entdist::cli {

namespace {

enum class Family { delta_g, islands, background };

struct FigureRecipe {
    Family family;
    std::vector<Configuration> configs;
    // Column stems and their values for one configuration at one point.
    std::vector<std::string> metrics;
    std::function<std::vector<double>(Configuration, const SourceParams&)> evaluate;
};

constexpr Configuration zalm = Configuration::zalm;
constexpr Configuration chahine = Configuration::chahine;
constexpr Configuration unheralded = Configuration::unheralded;

std::vector<double> range(double lo, double hi, double step) {
    std::vector<double> v;
    const auto n = static_cast<std::size_t>((hi - lo) / step + 1e-9) + 1;
    for (std::size_t k = 0; k < n; ++k) v.push_back(lo + step * k);
    return v;
}

double or_nan(std::optional<double> v) { return v.value_or(std::numeric_limits<double>::quiet_NaN()); }

FigureRecipe recipe(int number) {
    const std::vector<Configuration> heralded{zalm, chahine};
    const std::vector<Configuration> all{zalm, chahine, unheralded};
    switch (number) {
        case 8:
            return {Family::delta_g, heralded, {"q", "pair_prob", "true_pair_prob"},
                    [](Configuration c, const SourceParams& p) {
                        const HeraldStatistics h = herald_statistics(c, p);
                        return std::vector<double>{h.q.q_total, h.pair_prob, h.true_pair_prob};
                    }};
        case 9:
            return {Family::delta_g, heralded, {"psi_minus"},
                    [](Configuration c, const SourceParams& p) {
                        return std::vector<double>{bell_decomposition(c, p).psi_minus};
                    }};
        case 10:
            return {Family::delta_g, heralded, {"psi_plus", "phi_plus", "phi_minus"},
                    [](Configuration c, const SourceParams& p) {
                        const BellDecomposition b = bell_decomposition(c, p);
                        return std::vector<double>{b.psi_plus, b.phi_plus, b.phi_minus};
                    }};
        case 11:
            return {Family::delta_g, {unheralded}, {"psi_minus", "psi_plus"},
                    [](Configuration c, const SourceParams& p) {
                        const BellDecomposition b = bell_decomposition(c, p);
                        return std::vector<double>{b.psi_minus, b.psi_plus};
                    }};
        case 12:
            return {Family::delta_g, all, {"fraction"}, [](Configuration c, const SourceParams& p) {
                        return std::vector<double>{or_nan(bell_decomposition(c, p).fraction)};
                    }};
        case 13:
            return {Family::delta_g, all, {"fidelity"}, [](Configuration c, const SourceParams& p) {
                        return std::vector<double>{or_nan(bell_decomposition(c, p).fidelity)};
                    }};
        case 14:
        case 15:
        case 16:
        case 17:
            return {Family::islands, all, {"rate"}, [](Configuration c, const SourceParams& p) {
                        return std::vector<double>{rate_report(c, p).rate};
                    }};
        case 19:
            return {Family::background, all, {"loadable"}, [](Configuration c, const SourceParams& p) {
                        return std::vector<double>{pr_loadable(c, p)};
                    }};
        default:
            return {Family::background, all, {"fraction"}, [](Configuration c, const SourceParams& p) {
                        return std::vector<double>{or_nan(bell_decomposition(c, p).fraction)};
                    }};
    }
}

// Memories per island pair for the rate figures, as a function of N_I.
int memories_for(int figure, int n_islands) {
    if (figure == 14) return 1;
    if (figure == 16) return n_islands;
    return 5;
}

}  // namespace

const std::vector<FigureInfo>& figure_catalog() {
    static const std::vector<FigureInfo> catalog{
        {8, "heralding-probability", "herald declaration probabilities vs delta_g"},
        {9, "pr-correct-heralded", "correct-state probability of heralded sources vs delta_g"},
        {10, "pr-error-heralded", "error-state probabilities of heralded sources vs delta_g"},
        {11, "unheralded-correct-error", "unheralded correct and error probabilities vs delta_g"},
        {12, "bell-fraction", "Bell-state fraction vs delta_g"},
        {13, "bell-fidelity", "Bell-state fidelity vs delta_g"},
        {14, "rate-vs-islands-nm1", "ebit rate vs islands, one memory"},
        {15, "rate-vs-islands-nm5", "ebit rate vs islands, five memories"},
        {16, "rate-vs-islands-nm-ni", "ebit rate vs islands, one memory per island"},
        {17, "rate-vs-islands-nm5-eta75", "ebit rate vs islands, five memories, eta_t=0.75"},
        {19, "loadable-vs-background-modes", "normalized loadable probability vs background modes"},
        {20, "bell-fraction-vs-background-modes", "normalized Bell-state fraction vs background modes"},
    };
    return catalog;
}

const FigureInfo& find_figure(std::string_view key) {
    for (const FigureInfo& f : figure_catalog()) {
        if (key == f.slug || key == std::to_string(f.number)) return f;
    }
    std::string known;
    for (const FigureInfo& f : figure_catalog()) known += " " + std::string(f.slug);
    throw UsageError("unknown figure '" + std::string(key) + "'; known:" + known);
}

Table run_figure(const RunPlan& plan) {
    const FigureInfo& info = find_figure(plan.figure);
    const FigureRecipe r = recipe(info.number);

    SourceParams base = plan.base;
    if (!plan.given("pump_rate")) base.pump_rate = 1e9;
    if (!plan.given("eta_t")) base.eta_t = info.number == 17 ? 0.75 : 0.9;
    if (!plan.given("eta_r")) base.eta_r = 0.01;
    if (r.family == Family::background && !plan.given("n_b")) base.n_b = 1e-6;

    std::vector<Configuration> configs;
    for (Configuration c : r.configs) {
        if (std::find(plan.configs.begin(), plan.configs.end(), c) != plan.configs.end()) {
            configs.push_back(c);
        }
    }
    if (configs.empty()) throw UsageError("figure " + std::string(info.slug) + " has no selected configuration");

    std::string x_name = "delta_g";
    std::vector<double> xs = range(0.0005, 0.05, 0.0005);
    if (r.family == Family::islands) {
        x_name = "n_islands";
        xs = range(info.number == 14 || info.number == 16 ? 1 : 5, 100, 1);
    } else if (r.family == Family::background) {
        x_name = "m_b";
        xs = info.number == 19 ? range(0, 1000, 5) : range(0, 50, 1);
    }
    if (plan.axis) {
        if (plan.axis->name != x_name) {
            throw UsageError("figure " + std::string(info.slug) + " varies " + x_name +
                             "; --vary must name it");
        }
        xs = plan.axis->values;
    }

    // Operating delta_g per configuration, unless delta_g is the axis or given.
    std::vector<double> operating(configs.size(), base.delta_g);
    if (r.family != Family::delta_g && !plan.given("delta_g")) {
        for (std::size_t k = 0; k < configs.size(); ++k) {
            SourceParams clean = base;
            clean.n_b = 0.0;
            clean.m_b = 0;
            clean.n_islands = 1;
            clean.n_memories = 1;
            operating[k] = delta_g_max(configs[k], clean, 0.999, 0.99).delta_g;
        }
    }

    auto point = [&](std::size_t k, double x) {
        SourceParams p = base;
        p.delta_g = operating[k];
        set_param(p, x_name, x);
        if (r.family == Family::islands) p.n_memories = memories_for(info.number, p.n_islands);
        (void)validate(p);
        return p;
    };

    // Background curves are normalized by their background-free value.
    std::vector<std::vector<double>> reference(configs.size());
    if (r.family == Family::background) {
        for (std::size_t k = 0; k < configs.size(); ++k) {
            SourceParams clean = point(k, 0.0);
            clean.n_b = 0.0;
            reference[k] = r.evaluate(configs[k], clean);
        }
    }

    Table t;
    t.columns.push_back(x_name);
    if (r.family == Family::islands) t.columns.emplace_back("n_memories");
    for (Configuration c : configs) {
        for (const auto& m : r.metrics) t.columns.push_back(m + "_" + std::string(to_string(c)));
    }
    if (r.family != Family::delta_g) {
        for (Configuration c : configs) t.columns.push_back("delta_g_" + std::string(to_string(c)));
    }

    t.rows = parallel_map(xs.size(), [&](std::size_t i) {
        std::vector<Cell> row{xs[i]};
        if (r.family == Family::islands) {
            row.emplace_back(static_cast<double>(memories_for(info.number, static_cast<int>(xs[i]))));
        }
        for (std::size_t k = 0; k < configs.size(); ++k) {
            const auto values = r.evaluate(configs[k], point(k, xs[i]));
            for (std::size_t m = 0; m < values.size(); ++m) {
                row.emplace_back(r.family == Family::background ? values[m] / reference[k][m] : values[m]);
            }
        }
        if (r.family != Family::delta_g) {
            for (double g : operating) row.emplace_back(g);
        }
        return row;
    });
    return t;
}

std::string plot_script(const FigureInfo& figure, const Table& data, const std::string& csv_path) {
    const bool log_y = figure.number <= 11 || (figure.number >= 14 && figure.number <= 17);
    std::string series;
    for (std::size_t i = 1; i < data.columns.size(); ++i) {
        const std::string& c = data.columns[i];
        if (c == "n_memories" || c.rfind("delta_g_", 0) == 0) continue;
        series += "    \"" + c + "\",\n";
    }
    return "# Plots " + std::string(figure.slug) + " from its CSV.\n"
           "import csv\n"
           "import matplotlib.pyplot as plt\n\n"
           "with open(\"" + csv_path + "\") as f:\n"
           "    rows = list(csv.DictReader(f))\n"
           "x = [float(r[\"" + data.columns[0] + "\"]) for r in rows]\n"
           "series = [\n" + series + "]\n"
           "for name in series:\n"
           "    plt.plot(x, [float(r[name]) for r in rows], label=name)\n"
           "plt.xlabel(\"" + data.columns[0] + "\")\n" +
           (log_y ? "plt.yscale(\"log\")\n" : "") +
           "plt.title(\"" + std::string(figure.title) + "\")\n"
           "plt.legend()\n"
           "plt.savefig(\"" + std::string(figure.slug) + ".png\", dpi=150)\n";
}

}  // namespace entdist::cli
