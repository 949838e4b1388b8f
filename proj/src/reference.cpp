#include "vofde/reference.hpp"

#include <algorithm>
#include <cmath>

#include "vofde/error.hpp"

namespace vofde::reference {

SolveResult oracle_solve(const cases::BenchmarkCase& bench, int coarse_intervals, double t_end, int refine,
                         double tolerance) {
    if (refine < 2) {
        throw ConfigError("oracle refinement factor must be at least 2");
    }
    const cases::BenchmarkCase fine = bench.with_intervals(coarse_intervals * refine);
    StepControl control = bench.control;
    control.tolerance = tolerance;
    control.initial_step = std::min(control.initial_step, std::max(control.min_step, tolerance));
    // Orders near 0 shrink the first-step error only slowly with the step, so
    // the tightened tolerance can sit many halvings below the default start.
    control.max_halvings = std::max(control.max_halvings, 400);
    return solve_adaptive(fine.spec, control, t_end);
}

namespace {

ErrorSeries make_series(std::size_t n) {
    ErrorSeries s;
    s.times.reserve(n);
    s.midpoint_error.reserve(n);
    s.max_error.reserve(n);
    return s;
}

std::size_t midpoint_node(const SpatialGrid& grid) {
    return grid.nearest(0.5 * (grid.x_left() + grid.x_right()));
}

}  // namespace

ErrorSeries error_vs_exact(const SolutionHistory& run, const SpatialGrid& grid, const SpaceTimeFn& exact) {
    if (run.field_size() != grid.size()) {
        throw MeshError("error_vs_exact: run does not live on the given grid");
    }
    const std::size_t mid = midpoint_node(grid);
    ErrorSeries s = make_series(run.size());
    for (std::size_t m = 1; m < run.size(); ++m) {
        const double t = run.time(m);
        const Field& u = run.field(m);
        double worst = 0.0;
        double at_mid = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j) {
            const double e = std::abs(u[j] - exact(grid.x(j), t));
            worst = std::max(worst, e);
            if (j == mid) at_mid = e;
        }
        s.times.push_back(t);
        s.midpoint_error.push_back(at_mid);
        s.max_error.push_back(worst);
    }
    return s;
}

Field interpolate_in_time(const SolutionHistory& history, double t) {
    const auto times = history.times();
    if (t < 0.0 || t > times.back()) {
        throw MeshError("interpolate_in_time: time outside the history span");
    }
    auto hi = std::upper_bound(times.begin(), times.end(), t);
    if (hi == times.end()) return history.back();
    const auto m = static_cast<std::size_t>(hi - times.begin()) - 1;
    const double alpha = (t - times[m]) / (times[m + 1] - times[m]);
    const Field& a = history.field(m);
    const Field& inc = history.increment(m);
    Field u(a.size());
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = a[j] + alpha * inc[j];
    return u;
}

ErrorSeries error_vs_oracle(const SolutionHistory& run, const SpatialGrid& grid, const SolutionHistory& oracle,
                            const SpatialGrid& oracle_grid) {
    if (run.field_size() != grid.size() || oracle.field_size() != oracle_grid.size()) {
        throw MeshError("error_vs_oracle: history does not live on its grid");
    }
    if (grid.x_left() != oracle_grid.x_left() || grid.x_right() != oracle_grid.x_right() ||
        oracle_grid.intervals() % grid.intervals() != 0) {
        throw MeshError("error_vs_oracle: oracle grid must refine the run grid by an integer factor");
    }
    // Allow the oracle to end a relative 1e-12 short of the run.
    const double run_end = run.back_time();
    if (oracle.back_time() < run_end * (1.0 - 1e-12)) {
        throw MeshError("error_vs_oracle: oracle does not cover the run's time span");
    }
    const auto stride = static_cast<std::size_t>(oracle_grid.intervals() / grid.intervals());
    const std::size_t mid = midpoint_node(grid);

    ErrorSeries s = make_series(run.size());
    for (std::size_t m = 1; m < run.size(); ++m) {
        const double t = std::min(run.time(m), oracle.back_time());
        const Field ref = interpolate_in_time(oracle, t);
        const Field& u = run.field(m);
        double worst = 0.0;
        double at_mid = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j) {
            const double e = std::abs(u[j] - ref[j * stride]);
            worst = std::max(worst, e);
            if (j == mid) at_mid = e;
        }
        s.times.push_back(run.time(m));
        s.midpoint_error.push_back(at_mid);
        s.max_error.push_back(worst);
    }
    return s;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw DomainError("log_log_slope: need two or more matching points");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
            throw DomainError("log_log_slope: values must be positive");
        }
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const auto n = static_cast<double>(x.size());
    const double denom = n * sxx - sx * sx;
    if (!(std::abs(denom) > 0.0)) {
        throw DomainError("log_log_slope: x values are not distinct");
    }
    return (n * sxy - sx * sy) / denom;
}

namespace {

// Samples the counters at the first accepted node at or past each checkpoint.
struct CheckpointRecorder {
    std::string mode;
    double parameter;
    std::span<const double> checkpoints;
    double t50;
    std::vector<WorkReport> rows;

    void operator()(const SolutionHistory& history, const SolveReport& report) {
        const double t = history.back_time();
        while (rows.size() < checkpoints.size() && t >= checkpoints[rows.size()] * (1.0 - 1e-12)) {
            WorkReport r;
            r.mode = mode;
            r.tolerance_or_dt = parameter;
            r.checkpoint = checkpoints[rows.size()];
            r.t = t;
            r.accepted_steps = report.accepted_steps;
            r.rejected_trials = report.rejected_trials;
            r.history_terms = report.work.history_terms;
            r.wall_time_s = report.wall_time_s;
            r.normalized_time = t50 > 0.0 ? report.wall_time_s / t50 : 0.0;
            rows.push_back(r);
        }
    }
};

SeriesFit fit(const std::vector<WorkReport>& rows, const std::string& mode, double parameter) {
    SeriesFit f{mode, parameter, 0.0, 0.0, 0.0};
    std::vector<double> t, terms, steps, wall;
    for (const auto& r : rows) {
        // Several checkpoints may resolve to the same solver node.
        if (!t.empty() && r.t == t.back()) continue;
        t.push_back(r.t);
        terms.push_back(static_cast<double>(r.history_terms));
        steps.push_back(static_cast<double>(r.accepted_steps));
        wall.push_back(r.wall_time_s);
    }
    if (t.size() < 2) return f;
    f.history_terms_slope = log_log_slope(t, terms);
    f.steps_slope = log_log_slope(t, steps);
    const bool timed = std::all_of(wall.begin(), wall.end(), [](double w) { return w > 0.0; });
    f.wall_time_slope = timed ? log_log_slope(t, wall) : 0.0;
    return f;
}

}  // namespace

WorkScaling work_scaling(const cases::BenchmarkCase& bench, double fixed_dt, std::span<const double> tolerances,
                         std::span<const double> checkpoints, double t50) {
    if (checkpoints.empty()) {
        throw ConfigError("work_scaling: checkpoint list is empty");
    }
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (!(checkpoints[i] > 0.0) || (i > 0 && !(checkpoints[i] > checkpoints[i - 1]))) {
            throw ConfigError("work_scaling: checkpoints must be positive and increasing");
        }
    }
    const double t_end = checkpoints.back();
    WorkScaling out;

    auto run_series = [&](const std::string& mode, double parameter, auto&& solve) {
        CheckpointRecorder rec{mode, parameter, checkpoints, t50, {}};
        solve(std::ref(rec));
        out.fits.push_back(fit(rec.rows, mode, parameter));
        out.rows.insert(out.rows.end(), rec.rows.begin(), rec.rows.end());
    };

    if (fixed_dt > 0.0) {
        run_series("fixed", fixed_dt, [&](auto observer) { solve_fixed(bench.spec, fixed_dt, t_end, observer); });
    }
    for (const double tol : tolerances) {
        StepControl control = bench.control;
        control.tolerance = tol;
        run_series("adaptive", tol, [&](auto observer) { solve_adaptive(bench.spec, control, t_end, observer); });
    }
    return out;
}

double normalization_unit(int runs) {
    const cases::BenchmarkCase c1 = cases::case1();
    std::vector<double> times;
    for (int i = 0; i < std::max(runs, 1); ++i) {
        times.push_back(solve_fixed(c1.spec, 0.01, 0.5).report.wall_time_s);
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
}

}  // namespace vofde::reference
