// SPDX-License-Identifier: MIT
#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "entdist/cli/output.hpp"
#include "entdist/cli/plan.hpp"

namespace entdist::cli {

// Full command line without the program name. Returns the exit code:
// 0 success, 1 computation or verification failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

[[nodiscard]] Table run_eval(const RunPlan& plan);
[[nodiscard]] Table run_sweep(const RunPlan& plan);
[[nodiscard]] Table run_table(const RunPlan& plan);
[[nodiscard]] Table run_gmax(const RunPlan& plan);

struct FigureInfo {
    int number;
    std::string_view slug;
    std::string_view title;
};

[[nodiscard]] const std::vector<FigureInfo>& figure_catalog();
// Accepts a number or slug; throws UsageError when unknown.
[[nodiscard]] const FigureInfo& find_figure(std::string_view key);
[[nodiscard]] Table run_figure(const RunPlan& plan);
[[nodiscard]] std::string plot_script(const FigureInfo& figure, const Table& data,
                                      const std::string& csv_path);

struct VerifyReport {
    Table table;
    int points = 0;
    int failures = 0;
    double max_error = 0.0;
    double max_leaked = 0.0;
};

[[nodiscard]] VerifyReport run_verify(const RunPlan& plan);

// Worker count for `jobs` independent tasks: hardware threads, capped by
// ENTDIST_THREADS when set.
[[nodiscard]] unsigned worker_count(std::size_t jobs);

}  // namespace entdist::cli
