#include "vofde/cases.hpp"

#include <cmath>
#include <numbers>

#include "vofde/error.hpp"
#include "vofde/special.hpp"

namespace vofde::cases {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCase4Parameter = 0.99;

double zero_t(double) { return 0.0; }
double sine(double x) { return std::sin(x); }

// Where gamma is close to 0 the solution moves like t^gamma, so the local
// error of the first step shrinks only as a small power of the step. A
// tolerance of 1e-4 then needs a first step of order 1e-16 (case 3) to
// 1e-24 (case 2); the controller doubles its way up from there.
void tiny_first_step(StepControl& c) {
    c.initial_step = 1e-30;
    c.min_step = 1e-300;
}

}  // namespace

BenchmarkCase BenchmarkCase::with_intervals(int intervals) const {
    BenchmarkCase c = *this;
    c.spec = spec.with_grid(SpatialGrid(spec.grid.x_left(), spec.grid.x_right(), intervals));
    return c;
}

double case1_gamma(double t) { return (1.0 + std::exp(-t)) / 2.0; }

double case1_forcing(double x, double t) {
    const double g = case1_gamma(t);
    return (2.0 - std::exp(-t) + std::pow(t, 1.0 - g) * special::ml_e1b(2.0 - g, -t)) * std::sin(x);
}

double case1_exact(double x, double t) { return (2.0 - std::exp(-t)) * std::sin(x); }

double case4_gamma(double t) {
    static const double k = special::elliptic_K(kCase4Parameter);
    return special::jacobi_dn(k * t / 2.0, kCase4Parameter);
}

BenchmarkCase case1() {
    BenchmarkCase c{
        .name = "case1",
        .summary = "time-dependent order (1+e^-t)/2 with exact solution (2-e^-t) sin x",
        .spec = ProblemSpec{.grid = SpatialGrid(0.0, kPi, 40),
                            .gamma = [](double, double t) { return case1_gamma(t); },
                            .gamma_depends_on_x = false,
                            .diffusivity = 1.0,
                            .forcing = case1_forcing,
                            .initial = sine,
                            .bc_left = zero_t,
                            .bc_right = zero_t},
        .exact = case1_exact,
        .default_intervals = 40,
        .default_t_end = 10.0,
        .control = {},
        .expressions = {"(1+exp(-t))/2",
                        "(2-exp(-t)+t^(1-(1+exp(-t))/2)*ml1(2-(1+exp(-t))/2,-t))*sin(x)", "sin(x)", "0",
                        "0"},
        .notes = "",
    };
    c.control.tolerance = 1e-4;
    return c;
}

BenchmarkCase case2() {
    BenchmarkCase c{
        .name = "case2",
        .summary = "space-dependent order [1+8cos^2(2x)]/10, u(x,0) = sin x",
        .spec = ProblemSpec{.grid = SpatialGrid(0.0, kPi, 40),
                            .gamma =
                                [](double x, double) {
                                    return (1.0 + 8.0 * std::pow(std::cos(2.0 * x), 2.0)) / 10.0;
                                },
                            .gamma_depends_on_x = true,
                            .diffusivity = 1.0,
                            .forcing = {},
                            .initial = sine,
                            .bc_left = zero_t,
                            .bc_right = zero_t},
        .exact = {},
        .default_intervals = 40,
        .default_t_end = 1013.0,
        .control = {},
        .expressions = {"(1+8*cos(2*x)^2)/10", "0", "sin(x)", "0", "0"},
        .notes = "",
    };
    c.control.tolerance = 1e-4;
    c.control.max_step = 100.0;
    tiny_first_step(c.control);
    return c;
}

BenchmarkCase case3() {
    BenchmarkCase c{
        .name = "case3",
        .summary = "space-dependent order 2x(1-x/10)/5 on [0,10], relaxing to 1 - x/10",
        .spec = ProblemSpec{.grid = SpatialGrid(0.0, 10.0, 1000),
                            .gamma = [](double x, double) { return 2.0 * x * (1.0 - x / 10.0) / 5.0; },
                            .gamma_depends_on_x = true,
                            .diffusivity = 1.0,
                            .forcing = {},
                            .initial = [](double x) { return (x + 1.0) * (1.0 - x / 10.0); },
                            .bc_left = [](double) { return 1.0; },
                            .bc_right = zero_t},
        .exact = {},
        .default_intervals = 1000,
        .default_t_end = 90.0,
        .control = {},
        .expressions = {"2*x*(1-x/10)/5", "0", "(x+1)*(1-x/10)", "1", "0"},
        .notes = "",
    };
    c.control.tolerance = 1e-4;
    tiny_first_step(c.control);
    return c;
}

BenchmarkCase case4() {
    BenchmarkCase c{
        .name = "case4",
        .summary = "periodic order dn(K(m)t/2, m), m = 0.99, period 4; amplitude A(t) at x = pi/2",
        .spec = ProblemSpec{.grid = SpatialGrid(0.0, kPi, 40),
                            .gamma = [](double, double t) { return case4_gamma(t); },
                            .gamma_depends_on_x = false,
                            .diffusivity = 1.0,
                            .forcing = {},
                            .initial = sine,
                            .bc_left = zero_t,
                            .bc_right = zero_t},
        .exact = {},
        .default_intervals = 40,
        .default_t_end = 20.0,
        .control = {},
        .expressions = {"dn(ellipk(0.99)*t/2,0.99)", "0", "sin(x)", "0", "0"},
        .notes = "boundary values set to 0 at both ends: u(0,t)=1 is incompatible with the "
                 "separable solution A(t) sin x this case is meant to have",
    };
    c.control.tolerance = 1e-4;
    return c;
}

std::vector<std::string> case_names() { return {"case1", "case2", "case3", "case4"}; }

BenchmarkCase make_case(std::string_view name) {
    if (name == "case1") return case1();
    if (name == "case2") return case2();
    if (name == "case3") return case3();
    if (name == "case4") return case4();
    throw ConfigError("unknown case '" + std::string(name) + "' (expected case1..case4)");
}

ProblemSpec with_constant_order(const ProblemSpec& spec, double gamma) {
    ProblemSpec copy = spec;
    copy.gamma = [gamma](double, double) { return gamma; };
    copy.gamma_depends_on_x = false;
    return copy;
}

}  // namespace vofde::cases
