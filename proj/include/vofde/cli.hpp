#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vofde/cases.hpp"
#include "vofde/problem.hpp"
#include "vofde/stepper.hpp"

namespace vofde::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// A problem read from a JSON config file:
///   {"domain": {"x_left", "x_right", "J"}, "K", "gamma", "forcing", "initial",
///    "bc_left", "bc_right", "control": {...}, "t_end", "fixed_dt"}
/// Field entries are expression strings in x and t.
struct ProblemConfig {
    std::string name;
    ProblemSpec spec;
    StepControl control;
    std::optional<double> t_end;
    std::optional<double> fixed_dt;
};

ProblemConfig parse_problem_config(std::string_view json_text, std::string name = "config");
ProblemConfig load_problem_config(const std::string& path);

/// Problem built from expression strings; gamma_depends_on_x is derived from
/// the gamma expression.
ProblemSpec problem_from_expressions(const SpatialGrid& grid, double diffusivity,
                                     const cases::CaseExpressions& fields);

/// Options shared by run / compare / bench.
struct RunConfig {
    std::string case_name;
    std::string config_path;
    std::optional<int> intervals;  ///< --dx-den or --J
    std::optional<double> dx;
    std::optional<double> tolerance;
    std::optional<double> fixed_dt;
    std::optional<double> t_end;
    std::optional<double> initial_step;
    std::optional<double> min_step;
    std::optional<double> max_step;
    std::string out;
    std::string format = "csv";
    std::vector<std::string> probes;
};

/// Entry point used by the executable; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Same, with the arguments after the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vofde::cli
