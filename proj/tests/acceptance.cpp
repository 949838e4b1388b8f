// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vofde/cases.hpp"
#include "vofde/error.hpp"
#include "vofde/l1.hpp"
#include "vofde/reference.hpp"
#include "vofde/special.hpp"
#include "vofde/stepper.hpp"

#include "oracle_values.hpp"

using namespace vofde;
namespace sp = vofde::special;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

// Classical backward Euler for u_t = K u_xx with zero Dirichlet data, written
// without any of the library's kernel code.
std::vector<std::vector<double>> backward_euler(const std::vector<double>& u0, double dx, double dt, double k,
                                                int steps) {
    const std::size_t n = u0.size() - 2;
    const double r = k * dt / (dx * dx);
    std::vector<std::vector<double>> out{u0};
    std::vector<double> u = u0;
    for (int s = 0; s < steps; ++s) {
        std::vector<double> c(n), d(n);
        const double b = 1.0 + 2.0 * r;
        c[0] = -r / b;
        d[0] = u[1] / b;
        for (std::size_t i = 1; i < n; ++i) {
            const double m = b + r * c[i - 1];
            c[i] = -r / m;
            d[i] = (u[i + 1] + r * d[i - 1]) / m;
        }
        std::vector<double> next(u.size(), 0.0);
        next[n] = d[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) {
            next[i + 1] = d[i] - c[i] * next[i + 2];
        }
        u = next;
        out.push_back(u);
    }
    return out;
}

Verdict criterion1() {
    Verdict v;
    cases::BenchmarkCase c = cases::case1();
    ProblemSpec spec = cases::with_constant_order(c.spec, 1.0);
    spec.forcing = nullptr;
    const double dt = 0.01;
    const SolveResult run = solve_fixed(spec, dt, 100 * dt);
    std::vector<double> u0 = run.history.field(0);
    const auto euler = backward_euler(u0, spec.grid.dx(), dt, spec.diffusivity, 100);
    double worst = 0.0;
    v.require(run.history.size() == 101, "100 steps");
    for (std::size_t m = 0; m < std::min<std::size_t>(run.history.size(), euler.size()); ++m) {
        for (std::size_t j = 0; j < u0.size(); ++j) {
            worst = std::max(worst, std::abs(run.history.field(m)[j] - euler[m][j]));
        }
    }
    v.require(worst <= 1e-12, "max deviation <= 1e-12");
    v.detail << "max |L1 - backward Euler| = " << worst;
    return v;
}

Verdict criterion2() {
    Verdict v;
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> step(1e-3, 1.0);
    std::uniform_int_distribution<int> length(1, 50);
    double worst_rel = 0.0;
    int meshes = 0;
    bool positive = true;
    bool monotone = true;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = length(rng);
        std::vector<double> t{0.0};
        for (int i = 0; i < n; ++i) t.push_back(t.back() + step(rng));
        ++meshes;
        for (double g : {0.1, 0.5, 0.9}) {
            const auto w = l1::caputo_weights(t, g).values;
            double sum = 0.0;
            for (std::size_t m = 0; m < w.size(); ++m) {
                positive = positive && w[m] > 0.0;
                if (m > 0) monotone = monotone && w[m] > w[m - 1];
                sum += w[m] * (t[m + 1] - t[m]);
            }
            const double target = std::pow(t.back(), 1.0 - g);
            worst_rel = std::max(worst_rel, std::abs(sum - target) / target);
        }
    }
    v.require(positive, "positivity");
    v.require(monotone, "monotone in m");
    v.require(worst_rel <= 1e-12, "telescoping to 1e-12");
    v.detail << meshes << " meshes x 3 orders, telescoping rel err = " << worst_rel;
    return v;
}

double time_averaged(const reference::ErrorSeries& s) {
    double area = 0.0;
    double prev_t = 0.0;
    double prev_e = 0.0;
    for (std::size_t i = 0; i < s.times.size(); ++i) {
        area += 0.5 * (s.midpoint_error[i] + prev_e) * (s.times[i] - prev_t);
        prev_t = s.times[i];
        prev_e = s.midpoint_error[i];
    }
    return area / prev_t;
}

struct Case1Runs {
    SolveResult tight;
    SolveResult loose;
};

const Case1Runs& case1_runs() {
    static const Case1Runs runs = [] {
        const cases::BenchmarkCase c = cases::case1();
        StepControl loose = c.control;
        loose.tolerance = 1e-3;
        return Case1Runs{solve_adaptive(c.spec, c.control, 10.0), solve_adaptive(c.spec, loose, 10.0)};
    }();
    return runs;
}

Verdict criterion3() {
    Verdict v;
    const cases::BenchmarkCase c = cases::case1();
    const auto& runs = case1_runs();
    const auto tight = reference::error_vs_exact(runs.tight.history, c.spec.grid, c.exact);
    const auto loose = reference::error_vs_exact(runs.loose.history, c.spec.grid, c.exact);
    const double worst = *std::max_element(tight.midpoint_error.begin(), tight.midpoint_error.end());
    const double avg_tight = time_averaged(tight);
    const double avg_loose = time_averaged(loose);
    v.require(worst <= 1e-2, "midpoint error <= 1e-2 at every node");
    v.require(avg_loose > avg_tight, "tol 1e-3 averaged error > tol 1e-4");
    v.detail << "max midpoint error " << worst << ", time-averaged " << avg_loose << " (1e-3) vs " << avg_tight
             << " (1e-4)";
    return v;
}

Verdict criterion4() {
    Verdict v;
    const cases::BenchmarkCase c = cases::case1();
    const auto& h = case1_runs().tight.history;
    const double u = h.back()[c.spec.grid.nearest(std::numbers::pi / 2)];
    const double target = 2.0 - std::exp(-10.0);
    v.require(std::abs(h.back_time() - 10.0) < 1e-9, "reached t = 10");
    v.require(std::abs(u - target) <= 5e-3, "within 5e-3 of 2 - e^-10");
    v.detail << "u(pi/2, 10) = " << u << ", |diff| = " << std::abs(u - target);
    return v;
}

Verdict criterion5() {
    Verdict v;
    const cases::BenchmarkCase c = cases::case2();
    StepControl control = c.control;
    control.tolerance = 1e-4;
    control.max_step = 100.0;
    const SolveResult r = solve_adaptive(c.spec, control, 1013.0);
    const Field& u = r.history.back();
    const SpatialGrid& g = c.spec.grid;
    const double mid = u[g.nearest(std::numbers::pi / 2)];
    double top = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double x = g.x(j);
        if (x >= std::numbers::pi / 3 - 1e-12 && x <= 2 * std::numbers::pi / 3 + 1e-12) top = std::max(top, u[j]);
    }
    const double ratio = top / mid;
    v.require(r.report.accepted_steps <= 300, "accepted steps <= 300");
    v.require(ratio <= 1.05, "plateau max/mid <= 1.05");
    v.detail << r.report.accepted_steps << " accepted steps to t = " << r.history.back_time()
             << ", plateau ratio " << ratio;
    return v;
}

Verdict criterion6() {
    Verdict v;
    const cases::BenchmarkCase c = cases::case1();
    const std::vector<double> fixed_checkpoints{0.5, 1.0, 2.0, 4.0, 8.0};
    const auto fixed = reference::work_scaling(c, 0.01, std::span<const double>{}, fixed_checkpoints);
    std::vector<double> n, terms;
    for (const auto& row : fixed.rows) {
        n.push_back(static_cast<double>(row.accepted_steps));
        terms.push_back(static_cast<double>(row.history_terms));
    }
    const double fixed_slope = reference::log_log_slope(n, terms);

    const std::vector<double> tol{1e-4};
    const std::vector<double> adaptive_checkpoints{2.0, 5.0, 10.0, 20.0, 50.0};
    const auto adaptive = reference::work_scaling(c, 0.0, tol, adaptive_checkpoints);
    std::vector<double> t, steps;
    for (const auto& row : adaptive.rows) {
        t.push_back(row.t);
        steps.push_back(static_cast<double>(row.accepted_steps));
    }
    const double adaptive_slope = reference::log_log_slope(t, steps);
    v.require(std::abs(fixed_slope - 2.0) <= 0.05, "fixed history_terms slope 2 +- 0.05");
    v.require(adaptive_slope <= 0.8, "adaptive steps slope <= 0.8");
    v.detail << "fixed slope " << fixed_slope << ", adaptive steps slope " << adaptive_slope;
    return v;
}

Verdict criterion7() {
    Verdict v;
    const double k0 = sp::elliptic_K(0.0);
    v.require(std::abs(k0 - std::numbers::pi / 2) <= 1e-14, "K(0) = pi/2");
    double dn_worst = 0.0;
    for (double m : {0.1, 0.5, 0.9, 0.99}) {
        dn_worst = std::max(dn_worst, std::abs(sp::jacobi_dn(sp::elliptic_K(m), m) - std::sqrt(1.0 - m)));
    }
    v.require(dn_worst <= 1e-10, "dn(K, m) = sqrt(1 - m)");
    double id_worst = 0.0;
    for (int i = 0; i <= 500; ++i) {
        const double z = -50.0 * i / 500.0;
        id_worst = std::max(id_worst, std::abs(sp::ml_e1b(1.0, z) - std::exp(z)));
        const double e12 = z == 0.0 ? 1.0 : std::expm1(z) / z;
        id_worst = std::max(id_worst, std::abs(sp::ml_e1b(2.0, z) - e12));
    }
    v.require(id_worst <= 1e-12, "E_{1,1}, E_{1,2} identities to 1e-12");
    double table_worst = 0.0;
    for (const auto& p : oracle::kMl15) {
        table_worst = std::max(table_worst, std::abs(sp::ml_e1b(1.5, p.z) - p.value));
    }
    v.require(oracle::kMl15.size() == 20, "20 probe points");
    v.require(table_worst <= 1e-10, "E_{1,1.5} oracle table to 1e-10");
    v.detail << "|K(0)-pi/2| " << std::abs(k0 - std::numbers::pi / 2) << ", dn " << dn_worst << ", identities "
             << id_worst << ", table " << table_worst;
    return v;
}

Verdict criterion8() {
    Verdict v;
    double period_worst = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double t = 0.01 * i;
        period_worst = std::max(period_worst, std::abs(cases::case4_gamma(t + 4.0) - cases::case4_gamma(t)));
    }
    v.require(period_worst <= 1e-9, "gamma(t + 4) = gamma(t)");
    const cases::BenchmarkCase c = cases::case4();
    const SolveResult r = solve_adaptive(c.spec, c.control, 11.0);
    auto mean_step = [&](double lo, double hi) {
        double sum = 0.0;
        int count = 0;
        for (const auto& s : r.report.steps) {
            if (s.t >= lo && s.t <= hi) {
                sum += s.step;
                ++count;
            }
        }
        return count ? sum / count : std::numeric_limits<double>::infinity();
    };
    v.detail << "|gamma(t+4) - gamma(t)| " << period_worst;
    for (int n : {1, 2}) {
        const double near = mean_step(4 * n - 0.5, 4 * n + 0.5);
        const double far = mean_step(4 * n + 1.5, 4 * n + 2.5);
        v.require(near < far, "window n = " + std::to_string(n));
        v.detail << ", n=" << n << " mean step " << near << " vs " << far;
    }
    return v;
}

Verdict criterion9() {
    Verdict v;
    const cases::BenchmarkCase c = cases::case3();
    auto deviation = [&](const ProblemSpec& spec) {
        const SolveResult r = solve_adaptive(spec, c.control, 90.0);
        double worst = 0.0;
        for (std::size_t j = 0; j < spec.grid.size(); ++j) {
            worst = std::max(worst, std::abs(r.history.back()[j] - (1.0 - spec.grid.x(j) / 10.0)));
        }
        return worst;
    };
    const double classical = deviation(cases::with_constant_order(c.spec, 1.0));
    const double variable = deviation(c.spec);
    v.require(classical <= 1e-2, "gamma = 1 deviation <= 1e-2");
    v.require(variable >= 5.0 * classical, "variable deviation >= 5x");
    v.detail << "deviation at t = 90: gamma=1 " << classical << ", variable " << variable;
    return v;
}

Verdict criterion10() {
    Verdict v;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> log_c(-3.0, 3.0);
    std::uniform_real_distribution<double> power(0.3, 3.0);
    std::uniform_real_distribution<double> log_start(-8.0, 1.0);
    int laws = 0;
    for (int trial = 0; trial < 500; ++trial) {
        StepControl control;
        control.tolerance = std::pow(10.0, -2.0 - 4.0 * (trial % 5) / 4.0);
        control.min_step = 1e-12;
        control.max_step = (trial % 3 == 0) ? 0.5 : 10.0;
        const double cst = std::pow(10.0, log_c(rng));
        const double p = power(rng);
        const double start = std::pow(10.0, log_start(rng));
        auto law = [&](double d) { return cst * std::pow(d, p); };
        StepSearch s;
        try {
            s = search_step(control, start, law);
        } catch (const ControllerFailure&) {
            v.require(law(control.min_step) >= control.tolerance, "failure only when min_step fails");
            continue;
        }
        ++laws;
        v.require(s.error < control.tolerance, "accepted error < tolerance");
        v.require(s.error == law(s.step), "reported error matches law");
        v.require(s.step >= control.min_step && s.step <= control.max_step, "step within bounds");
        const double first = std::clamp(start, control.min_step, control.max_step);
        if (law(first) >= control.tolerance) {
            v.require(s.doublings == 0, "no doubling after a halving");
            v.require(s.step == first / std::ldexp(1.0, s.halvings) || s.step == control.min_step, "halving chain");
            v.require(s.halvings > 0 && law(std::min(2.0 * s.step, first)) >= control.tolerance,
                      "previous halving failed");
        } else {
            v.require(s.halvings == 0, "no halving after a pass");
            const double next = std::min(2.0 * s.step, control.max_step);
            const bool capped = s.step == control.max_step || s.doublings == control.max_doublings;
            v.require(capped || law(next) >= control.tolerance, "doubling stopped at last passing step");
        }
    }
    v.detail << laws << " mock laws accepted out of 500";
    return v;
}

Verdict criterion11() {
    Verdict v;
    const cases::BenchmarkCase c = cases::case1();
    const auto& run = case1_runs().tight.history;
    const SolveResult oracle = reference::oracle_solve(c, c.default_intervals, 10.0);
    const cases::BenchmarkCase fine = c.with_intervals(c.default_intervals * 4);
    const auto by_exact = reference::error_vs_exact(run, c.spec.grid, c.exact);
    const auto by_oracle = reference::error_vs_oracle(run, c.spec.grid, oracle.history, fine.spec.grid);
    for (double cp : {0.5, 1.0, 5.0, 10.0}) {
        std::size_t i = 0;
        while (i + 1 < by_exact.times.size() && by_exact.times[i] < cp - 1e-12) ++i;
        const double ratio = by_oracle.midpoint_error[i] / by_exact.midpoint_error[i];
        v.require(ratio >= 0.5 && ratio <= 2.0, "factor 2 at t = " + std::to_string(cp));
        v.detail << "t=" << by_exact.times[i] << " ratio " << ratio << "; ";
    }
    return v;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"C1 reduction to backward Euler", criterion1},
        {"C2 weight identities", criterion2},
        {"C3 case 1 accuracy", criterion3},
        {"C4 case 1 asymptote", criterion4},
        {"C5 case 2 step economy and plateau", criterion5},
        {"C6 work scaling", criterion6},
        {"C7 special functions", criterion7},
        {"C8 case 4 synchronization", criterion8},
        {"C9 case 3 stationarity contrast", criterion9},
        {"C10 controller contract", criterion10},
        {"C11 oracle consistency", criterion11},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %s: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.str().c_str(), secs);
        std::fflush(stdout);
        if (!v.pass) ++failures;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
