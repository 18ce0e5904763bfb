// SPDX-License-Identifier: MIT
#include <algorithm>
#include <cmath>

#include "entdist/bell.hpp"
#include "entdist/cli/commands.hpp"
#include "entdist/cli/parallel.hpp"
#include "entdist/herald.hpp"
#include "entdist/oracle.hpp"

namespace entdist::cli {

namespace {

// Round-off floor for Bell projections, relative to Pr(loadable): exact
// zeros in closed form come out of the oracle as sums of cancelling terms.
constexpr double projection_floor = 1e-14;

struct Check {
    Cell error;  // relative error, 0 inside the absolute floor
    bool ok = true;
};

Check compare(double closed, double oracle_value, double rtol, double atol) {
    const double diff = std::fabs(closed - oracle_value);
    if (diff <= atol) return {0.0, true};
    const double rel = closed != 0.0 ? diff / std::fabs(closed) : HUGE_VAL;
    return {rel, rel <= rtol};
}

Check compare(std::optional<double> closed, std::optional<double> oracle_value, double rtol) {
    if (!closed && !oracle_value) return {std::monostate{}, true};
    if (!closed || !oracle_value) return {HUGE_VAL, false};
    return compare(*closed, *oracle_value, rtol, 0.0);
}

std::vector<SourceParams> verify_points(const RunPlan& plan) {
    const bool single = plan.axis || std::any_of(param_names.begin(), param_names.end(),
                                                 [&](std::string_view k) { return plan.given(k); });
    std::vector<SourceParams> points;
    if (single) {
        if (!plan.axis) return {plan.base};
        for (double v : plan.axis->values) {
            SourceParams p = plan.base;
            set_param(p, plan.axis->name, v);
            points.push_back(p);
        }
        return points;
    }
    for (double dg : {0.005, 0.0173, 0.03})
        for (double et : {0.75, 0.9, 1.0})
            for (double er : {0.01, 0.1, 1.0})
                for (double nb : {0.0, 1e-6, 1e-3}) {
                    SourceParams p = plan.base;
                    p.delta_g = dg;
                    p.eta_t = et;
                    p.eta_r = er;
                    p.n_b = nb;
                    points.push_back(p);
                }
    return points;
}

}  // namespace

VerifyReport run_verify(const RunPlan& plan) {
    const auto points = verify_points(plan);
    const std::size_t nc = plan.configs.size();
    const double rtol = plan.oracle.tolerance;

    struct Row {
        std::vector<Cell> cells;
        bool ok;
        double worst;
        double leaked;
    };
    auto rows = parallel_map(points.size() * nc, [&](std::size_t i) {
        const Configuration c = plan.configs[i % nc];
        const SourceParams& p = points[i / nc];
        oracle::OracleSettings s = plan.oracle;
        s.config = c;
        s.params = p;
        const oracle::OracleResult o = oracle::run_oracle(s);

        std::vector<Check> checks;
        if (is_heralded(c)) {
            const DeclarationProb q = herald_decl_prob(c, p);
            const DeclarationProb oq = oracle::dark_convolve(o.clicks, p.dark_per_gate);
            checks.push_back(compare(q.q_total, oq.q_total, rtol, 0.0));
            checks.push_back(compare(q.q_photon * q.q_photon, o.herald_all_patterns, rtol, 0.0));
        } else {
            checks.push_back({std::monostate{}, true});
            checks.push_back({std::monostate{}, true});
        }
        if (o.conditional) {
            const BellDecomposition cf = bell_decomposition(c, p);
            const BellDecomposition& od = o.decomposition;
            const double atol = projection_floor * cf.pr_loadable;
            checks.push_back(compare(cf.pr_loadable, od.pr_loadable, rtol, 0.0));
            checks.push_back(compare(cf.psi_minus, od.psi_minus, rtol, atol));
            checks.push_back(compare(cf.psi_plus, od.psi_plus, rtol, atol));
            checks.push_back(compare(cf.phi_plus, od.phi_plus, rtol, atol));
            checks.push_back(compare(cf.phi_minus, od.phi_minus, rtol, atol));
            checks.push_back(compare(cf.fraction, od.fraction, rtol));
            checks.push_back(compare(cf.fidelity, od.fidelity, rtol));
        } else {
            checks.resize(checks.size() + 7);
        }

        Row row{{std::string(to_string(c)), p.delta_g, p.eta_t, p.eta_r, p.n_b,
                 static_cast<double>(p.m_b), p.dark_per_gate},
                true, 0.0, o.leaked};
        for (const Check& k : checks) {
            row.cells.push_back(k.error);
            row.ok = row.ok && k.ok;
            if (std::holds_alternative<double>(k.error)) {
                row.worst = std::max(row.worst, std::get<double>(k.error));
            }
        }
        row.cells.emplace_back(row.worst);
        row.cells.emplace_back(o.leaked);
        row.cells.emplace_back(std::string(row.ok ? "pass" : "FAIL"));
        return row;
    });

    VerifyReport report;
    report.table.columns = {"config", "delta_g", "eta_t", "eta_r", "n_b", "m_b", "dark_per_gate",
                            "herald_q", "herald_pair", "pr_loadable", "psi_minus", "psi_plus",
                            "phi_plus", "phi_minus", "fraction", "fidelity", "max_error",
                            "leaked", "status"};
    for (auto& r : rows) {
        ++report.points;
        if (!r.ok) ++report.failures;
        report.max_error = std::max(report.max_error, r.worst);
        report.max_leaked = std::max(report.max_leaked, r.leaked);
        report.table.rows.push_back(std::move(r.cells));
    }
    return report;
}

}  // namespace entdist::cli
