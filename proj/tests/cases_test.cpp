#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracle_values.hpp"
#include "vofde/cases.hpp"
#include "vofde/cli.hpp"
#include "vofde/error.hpp"
#include "vofde/special.hpp"

using namespace vofde;
using namespace vofde::cases;

TEST(Cases, Registry) {
    const auto names = case_names();
    ASSERT_EQ(names.size(), 4u);
    for (const auto& n : names) {
        const BenchmarkCase c = make_case(n);
        EXPECT_EQ(c.name, n);
        EXPECT_FALSE(c.summary.empty());
        EXPECT_FALSE(has_violation(validate(c.spec, c.default_t_end))) << n;
        EXPECT_NO_THROW(c.control.validate());
    }
    EXPECT_THROW(make_case("case5"), ConfigError);
}

TEST(Cases, Defaults) {
    const BenchmarkCase c1 = case1();
    EXPECT_TRUE(c1.has_exact());
    EXPECT_DOUBLE_EQ(c1.default_dx(), std::numbers::pi / 40);
    EXPECT_EQ(c1.default_tolerance(), 1e-4);
    EXPECT_EQ(c1.default_t_end, 10.0);
    EXPECT_FALSE(c1.spec.gamma_depends_on_x);

    const BenchmarkCase c2 = case2();
    EXPECT_FALSE(c2.has_exact());
    EXPECT_TRUE(c2.spec.gamma_depends_on_x);
    EXPECT_EQ(c2.control.max_step, 100.0);

    const BenchmarkCase c3 = case3();
    EXPECT_DOUBLE_EQ(c3.default_dx(), 0.01);
    EXPECT_EQ(c3.spec.grid.x_right(), 10.0);
    EXPECT_EQ(c3.spec.bc_left(5.0), 1.0);
    EXPECT_EQ(c3.spec.bc_right(5.0), 0.0);

    const BenchmarkCase c4 = case4();
    EXPECT_FALSE(c4.spec.gamma_depends_on_x);
    EXPECT_FALSE(c4.notes.empty());
}

TEST(Cases, WithIntervals) {
    const BenchmarkCase c = case1().with_intervals(160);
    EXPECT_EQ(c.spec.grid.intervals(), 160);
    EXPECT_EQ(c.default_intervals, 40);
    EXPECT_DOUBLE_EQ(c.default_dx(), std::numbers::pi / 160);
}

TEST(Cases, ConstantOrder) {
    const ProblemSpec p = with_constant_order(case2().spec, 1.0);
    EXPECT_EQ(p.gamma(0.3, 2.0), 1.0);
    EXPECT_FALSE(p.gamma_depends_on_x);
}

TEST(Case1, ForcingOracle) {
    EXPECT_NEAR(case1_gamma(1.0), oracle::kCase1GammaT1, 1e-15);
    EXPECT_NEAR(case1_forcing(std::numbers::pi / 2, 1.0), oracle::kCase1ForcingMidT1, 1e-13);
    EXPECT_EQ(case1_gamma(0.0), 1.0);
    EXPECT_NEAR(case1_exact(std::numbers::pi / 2, 0.0), 1.0, 1e-15);
    EXPECT_NEAR(case1_exact(std::numbers::pi / 2, 50.0), 2.0, 1e-15);
}

TEST(Case1, ExactSolutionSatisfiesEquationAsTEndsToZero) {
    // At t = 0 the order is 1 and F = u_t - u_xx = (1 + 1) sin x.
    for (double x : {0.3, 1.0, 2.0}) EXPECT_NEAR(case1_forcing(x, 0.0), 2.0 * std::sin(x), 1e-14);
}

TEST(Case2, OrderField) {
    const ProblemSpec p = case2().spec;
    EXPECT_NEAR(p.gamma(0.0, 0.0), 0.9, 1e-15);
    EXPECT_NEAR(p.gamma(std::numbers::pi / 4, 0.0), 0.1, 1e-15);
    EXPECT_NEAR(p.gamma(std::numbers::pi / 2, 7.0), 0.9, 1e-15);
}

TEST(Case3, OrderField) {
    const ProblemSpec p = case3().spec;
    EXPECT_EQ(p.gamma(0.0, 0.0), 0.0);
    EXPECT_EQ(p.gamma(10.0, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(p.gamma(5.0, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(p.initial(0.0), 1.0);
    EXPECT_DOUBLE_EQ(p.initial(10.0), 0.0);
}

TEST(Case4, PeriodicOrder) {
    EXPECT_NEAR(case4_gamma(0.0), 1.0, 1e-15);
    EXPECT_NEAR(case4_gamma(2.0), 0.1, 1e-10);
    for (double t = 0.0; t < 20.0; t += 0.173) {
        EXPECT_NEAR(case4_gamma(t + 4.0), case4_gamma(t), 1e-9);
        EXPECT_GE(case4_gamma(t), 0.1 - 1e-12);
        EXPECT_LE(case4_gamma(t), 1.0 + 1e-15);
    }
    EXPECT_NEAR(case4_gamma(5.0),
                special::jacobi_dn(special::elliptic_K(0.99) * 2.5, 0.99), 1e-15);
}

TEST(Cases, ExpressionTrajectoryMatchesNative) {
    for (const auto& name : case_names()) {
        const BenchmarkCase c = make_case(name).with_intervals(name == "case3" ? 100 : 20);
        const ProblemSpec from_text = cli::problem_from_expressions(c.spec.grid, c.spec.diffusivity, c.expressions);
        EXPECT_EQ(from_text.gamma_depends_on_x, c.spec.gamma_depends_on_x) << name;
        const SolveResult a = solve_fixed(c.spec, 0.05, 1.0);
        const SolveResult b = solve_fixed(from_text, 0.05, 1.0);
        ASSERT_EQ(a.history.size(), b.history.size());
        double worst = 0.0;
        for (std::size_t m = 0; m < a.history.size(); ++m) {
            for (std::size_t j = 0; j < a.history.field_size(); ++j) {
                worst = std::max(worst, std::abs(a.history.field(m)[j] - b.history.field(m)[j]));
            }
        }
        EXPECT_LE(worst, 1e-13) << name;
    }
}
