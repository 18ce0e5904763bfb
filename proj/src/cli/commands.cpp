// SPDX-License-Identifier: MIT
#include "entdist/cli/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <thread>

#include "entdist/bell.hpp"
#include "entdist/cli/parallel.hpp"
#include "entdist/herald.hpp"
#include "entdist/rate.hpp"
#include "entdist/threshold.hpp"

namespace entdist::cli {

namespace {

std::vector<std::string> metric_columns() {
    std::vector<std::string> cols{"config"};
    for (auto name : param_names) cols.emplace_back(name);
    for (const char* name : {"q", "q_photon", "pair_prob", "true_pair_prob", "p0", "expected_heralds",
                             "psi_minus", "psi_plus", "phi_plus", "phi_minus", "pr_bell",
                             "pr_loadable", "fraction", "fidelity", "ebits_per_pulse", "rate",
                             "pr_ent"}) {
        cols.emplace_back(name);
    }
    return cols;
}

std::vector<Cell> metric_row(Configuration config, const SourceParams& p) {
    std::vector<Cell> row{std::string(to_string(config))};
    for (auto name : param_names) row.emplace_back(get_param(p, name));
    if (is_heralded(config)) {
        const HeraldStatistics h = herald_statistics(config, p);
        for (double v : {h.q.q_total, h.q.q_photon, h.pair_prob, h.true_pair_prob, h.p0,
                         h.expected_heralds}) {
            row.emplace_back(v);
        }
    } else {
        row.resize(row.size() + 6);
    }
    const BellDecomposition b = bell_decomposition(config, p);
    for (double v : {b.psi_minus, b.psi_plus, b.phi_plus, b.phi_minus, b.pr_bell, b.pr_loadable}) {
        row.emplace_back(v);
    }
    row.push_back(cell(b.fraction));
    row.push_back(cell(b.fidelity));
    const RateReport r = rate_report(config, p);
    row.emplace_back(r.ebits_per_pulse);
    row.emplace_back(r.rate);
    row.push_back(cell(r.pr_ent));
    return row;
}

// Defaults shared by the tables: the operating point of the rate study.
SourceParams table_params(const RunPlan& plan) {
    SourceParams p = plan.base;
    if (!plan.given("eta_t")) p.eta_t = 0.9;
    if (!plan.given("eta_r")) p.eta_r = 0.01;
    return p;
}

Table threshold_table(const RunPlan& plan, double default_b_min) {
    const SourceParams p = table_params(plan);
    const double b_min = plan.given("b_min") ? plan.b_min : default_b_min;
    const double f_min = plan.given("f_min") ? plan.f_min : 0.99;
    Table t{{"config", "b_min", "f_min", "fraction_root", "fidelity_root", "delta_g_max", "binding"}, {}};
    for (Configuration c : plan.configs) {
        const ThresholdResult r = delta_g_max(c, p, b_min, f_min);
        t.rows.push_back({std::string(to_string(c)), b_min, f_min, r.fraction_root, r.fidelity_root,
                          r.delta_g, std::string(to_string(r.binding))});
    }
    return t;
}

// Operating delta_g of a configuration: the largest value meeting the
// default floors at the given efficiencies.
double operating_delta_g(Configuration c, const SourceParams& p) {
    SourceParams clean = p;
    clean.n_b = 0.0;
    clean.m_b = 0;
    return delta_g_max(c, clean, 0.999, 0.99).delta_g;
}

Table declaration_table(const RunPlan& plan) {
    const SourceParams base = table_params(plan);
    std::vector<double> darks{0.0, 5e-7};
    if (plan.given("dark_per_gate")) darks = {plan.base.dark_per_gate};
    Table t{{"config", "delta_g", "dark_per_gate", "q", "true_herald"}, {}};
    for (Configuration c : plan.configs) {
        if (!is_heralded(c)) continue;
        SourceParams p = base;
        if (!plan.given("delta_g")) p.delta_g = operating_delta_g(c, p);
        for (double d : darks) {
            p.dark_per_gate = d;
            const HeraldStatistics h = herald_statistics(c, p);
            t.rows.push_back({std::string(to_string(c)), p.delta_g, d, h.q.q_total, h.true_pair_prob});
        }
    }
    return t;
}

Table fidelity_table(const RunPlan& plan) {
    const SourceParams base = table_params(plan);
    const double n_b = plan.given("n_b") ? plan.base.n_b : 1e-6;
    Table t{{"config", "delta_g", "fidelity_no_background", "n_b", "fidelity_background"}, {}};
    for (Configuration c : plan.configs) {
        SourceParams p = base;
        p.n_b = 0.0;
        if (!plan.given("delta_g")) p.delta_g = operating_delta_g(c, p);
        const BellDecomposition clean = bell_decomposition(c, p);
        p.n_b = n_b;
        const BellDecomposition noisy = bell_decomposition(c, p);
        t.rows.push_back({std::string(to_string(c)), p.delta_g, cell(clean.fidelity), n_b,
                          cell(noisy.fidelity)});
    }
    return t;
}

std::vector<SourceParams> axis_points(const RunPlan& plan) {
    std::vector<SourceParams> points;
    if (!plan.axis) return {plan.base};
    for (double v : plan.axis->values) {
        SourceParams p = plan.base;
        set_param(p, plan.axis->name, v);
        points.push_back(p);
    }
    return points;
}

void write_table(const Table& t, const RunPlan& plan, std::ostream& out, bool single_object) {
    auto emit = [&](std::ostream& s) {
        if (plan.format == Format::json) {
            write_json(t, s, single_object);
        } else {
            write_csv(t, s);
        }
    };
    if (plan.out_path.empty()) {
        emit(out);
        return;
    }
    std::ofstream file(plan.out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + plan.out_path);
    emit(file);
}

const char* table_title(int n) {
    switch (n) {
        case 1: return "delta_g_max at eta_t=0.9, eta_r=0.01, b_min=0.9998, f_min=0.99";
        case 2: return "delta_g_max at eta_t=0.9, eta_r=0.01, b_min=0.999, f_min=0.99";
        case 3: return "herald declaration and true-herald probabilities at the operating delta_g";
        default: return "Bell-state fidelity without and with background at the operating delta_g";
    }
}

}  // namespace

unsigned worker_count(std::size_t jobs) {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* cap = std::getenv("ENTDIST_THREADS")) {
        const int v = std::atoi(cap);
        if (v >= 1) n = std::min(n, static_cast<unsigned>(v));
    }
    return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, jobs)));
}

Table run_eval(const RunPlan& plan) {
    Table t{metric_columns(), {}};
    for (Configuration c : plan.configs) t.rows.push_back(metric_row(c, plan.base));
    return t;
}

Table run_sweep(const RunPlan& plan) {
    const auto points = axis_points(plan);
    const std::size_t nc = plan.configs.size();
    Table t{metric_columns(), parallel_map(points.size() * nc, [&](std::size_t i) {
                return metric_row(plan.configs[i % nc], points[i / nc]);
            })};
    return t;
}

Table run_table(const RunPlan& plan) {
    switch (plan.table) {
        case 1: return threshold_table(plan, 0.9998);
        case 2: return threshold_table(plan, 0.999);
        case 3: return declaration_table(plan);
        case 4: return fidelity_table(plan);
        default: throw UsageError("table must be 1, 2, 3, or 4");
    }
}

Table run_gmax(const RunPlan& plan) {
    const auto points = axis_points(plan);
    const std::size_t nc = plan.configs.size();
    Table t{{"config", "eta_t", "eta_r", "n_b", "m_b", "b_min", "f_min", "fraction_root",
             "fidelity_root", "delta_g_max", "binding", "non_monotonic"},
            {}};
    t.rows = parallel_map(points.size() * nc, [&](std::size_t i) {
        const Configuration c = plan.configs[i % nc];
        const SourceParams& p = points[i / nc];
        const ThresholdResult r = delta_g_max(c, p, plan.b_min, plan.f_min);
        const bool odd = r.fraction_non_monotonic || r.fidelity_non_monotonic;
        return std::vector<Cell>{std::string(to_string(c)), p.eta_t, p.eta_r, p.n_b,
                                 static_cast<double>(p.m_b), plan.b_min, plan.f_min,
                                 r.fraction_root, r.fidelity_root, r.delta_g,
                                 std::string(to_string(r.binding)), std::string(odd ? "yes" : "no")};
    });
    return t;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunPlan plan;
    try {
        auto parsed = parse(args, out);
        if (!parsed) return 0;
        plan = std::move(*parsed);
    } catch (const std::invalid_argument& e) {  // ParameterError
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    try {
        switch (plan.command) {
            case Command::eval:
                write_table(run_eval(plan), plan, out, true);
                return 0;
            case Command::sweep:
                write_table(run_sweep(plan), plan, out, false);
                return 0;
            case Command::gmax:
                write_table(run_gmax(plan), plan, out, false);
                return 0;
            case Command::table: {
                const Table t = run_table(plan);
                out << "table " << plan.table << ": " << table_title(plan.table) << '\n';
                write_aligned(t, out);
                if (!plan.out_path.empty()) write_table(t, plan, out, false);
                return 0;
            }
            case Command::figure: {
                const Table t = run_figure(plan);
                write_table(t, plan, out, false);
                if (!plan.plot_script.empty()) {
                    std::ofstream script(plan.plot_script, std::ios::binary);
                    if (!script) throw std::runtime_error("cannot write " + plan.plot_script);
                    script << plot_script(find_figure(plan.figure), t,
                                          plan.out_path.empty() ? "figure.csv" : plan.out_path);
                }
                return 0;
            }
            case Command::verify: {
                const VerifyReport r = run_verify(plan);
                write_table(r.table, plan, out, false);
                char line[200];
                std::snprintf(line, sizeof line,
                              "verify: %d points, %d failed, max relative error %.3g, max leaked norm "
                              "%.3g, cutoff %d, tolerance %.3g\n",
                              r.points, r.failures, r.max_error, r.max_leaked, plan.oracle.cutoff,
                              plan.oracle.tolerance);
                err << line;
                return r.failures == 0 ? 0 : 1;
            }
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace entdist::cli
