#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vofde/problem.hpp"
#include "vofde/stepper.hpp"

namespace vofde::cases {

/// Textual form of a case's fields, as accepted by the JSON config loader.
struct CaseExpressions {
    std::string gamma;
    std::string forcing;
    std::string initial;
    std::string bc_left;
    std::string bc_right;
};

struct BenchmarkCase {
    std::string name;
    std::string summary;
    ProblemSpec spec;
    /// Empty when no closed form is known (an oracle run is used instead).
    SpaceTimeFn exact;
    int default_intervals = 40;
    double default_t_end = 1.0;
    /// Controller defaults; tolerance is the case's default tolerance.
    StepControl control;
    CaseExpressions expressions;
    /// Known caveats about the formulation.
    std::string notes;

    bool has_exact() const noexcept { return static_cast<bool>(exact); }
    double default_dx() const noexcept { return spec.grid.dx(); }
    double default_tolerance() const noexcept { return control.tolerance; }
    BenchmarkCase with_intervals(int intervals) const;
};

/// u = (2 - e^-t) sin x on [0, pi] with gamma(t) = (1 + e^-t)/2 and the
/// forcing that makes it exact.
BenchmarkCase case1();
/// gamma(x) = [1 + 8 cos^2(2x)]/10, u(x,0) = sin x, zero boundaries, F = 0.
BenchmarkCase case2();
/// gamma(x) = 2x(1 - x/10)/5 on [0, 10], u(x,0) = (x+1)(1-x/10), u(0)=1, u(10)=0.
BenchmarkCase case3();
/// gamma(t) = dn(K(m) t/2, m), m = 0.99 (period 4), u(x,0) = sin x.
///
/// Boundary values are homogeneous so that the solution keeps the separable
/// form A(t) sin x; the amplitude is read at x = pi/2.
BenchmarkCase case4();

double case1_gamma(double t);
double case1_forcing(double x, double t);
double case1_exact(double x, double t);
double case4_gamma(double t);

std::vector<std::string> case_names();
/// Throws ConfigError for an unknown name.
BenchmarkCase make_case(std::string_view name);

/// Copy of `spec` with a constant order field.
ProblemSpec with_constant_order(const ProblemSpec& spec, double gamma);

}  // namespace vofde::cases
