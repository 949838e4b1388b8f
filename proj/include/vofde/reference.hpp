#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vofde/cases.hpp"
#include "vofde/history.hpp"
#include "vofde/stepper.hpp"

namespace vofde::reference {

/// Error of a run at each of its nodes t_1..t_n.
struct ErrorSeries {
    std::vector<double> times;
    /// |U - reference| at the grid node nearest the domain midpoint.
    std::vector<double> midpoint_error;
    /// max_j |U_j - reference_j| over the run's grid.
    std::vector<double> max_error;
};

/// High-resolution adaptive solve: the grid is refined `refine` times
/// (coarse_intervals * refine intervals) and the tolerance tightened.
/// Throws ConfigError for refine < 2.
SolveResult oracle_solve(const cases::BenchmarkCase& bench, int coarse_intervals, double t_end, int refine = 4,
                         double tolerance = 1e-6);

/// Pointwise comparison against a closed-form solution.
ErrorSeries error_vs_exact(const SolutionHistory& run, const SpatialGrid& grid, const SpaceTimeFn& exact);

/// Comparison against an oracle trajectory, interpolated linearly in time at
/// each run node and restricted to the run's grid nodes. The oracle grid
/// must span the same interval with an integer multiple of the run's
/// intervals, and must cover the run's time span.
ErrorSeries error_vs_oracle(const SolutionHistory& run, const SpatialGrid& grid, const SolutionHistory& oracle,
                            const SpatialGrid& oracle_grid);

/// Oracle field at time t (linear in time between accepted nodes).
Field interpolate_in_time(const SolutionHistory& history, double t);

struct WorkReport {
    std::string mode;  ///< "fixed" or "adaptive"
    double tolerance_or_dt = 0.0;
    double checkpoint = 0.0;  ///< requested time
    double t = 0.0;           ///< first solver node at or past the checkpoint
    std::size_t accepted_steps = 0;
    std::size_t rejected_trials = 0;
    std::uint64_t history_terms = 0;
    double wall_time_s = 0.0;
    double normalized_time = 0.0;  ///< wall_time_s / T50; 0 when not timed
};

struct SeriesFit {
    std::string mode;
    double tolerance_or_dt = 0.0;
    /// Log-log slopes against the time reached.
    double history_terms_slope = 0.0;
    double steps_slope = 0.0;
    double wall_time_slope = 0.0;
};

struct WorkScaling {
    std::vector<WorkReport> rows;
    std::vector<SeriesFit> fits;
};

/// Least-squares slope of log(y) against log(x). Needs two or more
/// distinct positive x values.
double log_log_slope(std::span<const double> x, std::span<const double> y);

/// Runs one fixed-step sweep (skipped when fixed_dt <= 0) and one adaptive
/// sweep per tolerance, sampling the work counters at each checkpoint.
/// `t50` normalizes wall time (pass 0 to leave normalized_time at 0).
WorkScaling work_scaling(const cases::BenchmarkCase& bench, double fixed_dt, std::span<const double> tolerances,
                         std::span<const double> checkpoints, double t50 = 0.0);

/// Median wall time over `runs` fixed-step solves of case 1 with 50 steps
/// of 0.01.
double normalization_unit(int runs = 5);

}  // namespace vofde::reference
