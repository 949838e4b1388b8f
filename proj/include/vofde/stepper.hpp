#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "vofde/history.hpp"
#include "vofde/l1.hpp"
#include "vofde/problem.hpp"

namespace vofde {

/// Step-doubling controller settings. `tolerance` bounds the local error
/// indicator of every accepted step.
struct StepControl {
    double tolerance = 1e-4;
    double initial_step = 1e-4;
    double min_step = 1e-12;
    double max_step = 10.0;
    int max_halvings = 40;
    int max_doublings = 40;

    /// Throws ConfigError when the invariants do not hold.
    void validate() const;
};

/// max_k |full_k - half_k| over interior nodes (the endpoints carry the same
/// boundary values in both fields).
double error_indicator(const Field& full, const Field& half);

struct TrialResult {
    Field full;  ///< one step of size delta
    Field mid;   ///< first half step, at t_n + delta/2
    Field half;  ///< second half step, at t_n + delta
    double error = 0.0;
};

/// Computes both estimates for a step of size delta without touching the
/// history. Throws StepUnderflowError if delta/2 does not advance t_n.
TrialResult try_step(const ProblemSpec& spec, const SolutionHistory& history, double delta,
                     l1::WorkCounters* counters = nullptr);

/// Result of the halve/double search over trial steps.
struct StepSearch {
    double step = 0.0;
    double error = 0.0;
    int halvings = 0;
    int doublings = 0;
    int trials = 0;
    int rejected = 0;
};

/// The halve/double search on an arbitrary error law. Starting from
/// delta_try clamped into [min_step, upper]: if the error is at or above the
/// tolerance the step is halved until it passes; otherwise it is doubled
/// (clamped to `upper`) until it fails, and the last passing step is kept.
/// `upper` defaults to control.max_step. Throws ControllerFailure when the
/// tolerance is missed at min_step or after max_halvings.
StepSearch search_step(const StepControl& control, double delta_try,
                       const std::function<double(double)>& error_of,
                       double upper = std::numeric_limits<double>::infinity());

struct StepOutcome {
    double accepted_step = 0.0;
    double error_indicator = 0.0;
    int halvings_used = 0;
    int doublings_used = 0;
    int trials = 0;
    int rejected_trials = 0;
    /// Midpoint then endpoint of the two half steps; both were appended.
    std::vector<Field> accepted_fields;
};

/// One accepted controller step: searches, then appends the midpoint and the
/// two-half-step endpoint to `history`. `upper` caps the step (used to land
/// on t_end).
StepOutcome adaptive_advance(const ProblemSpec& spec, SolutionHistory& history, const StepControl& control,
                             double delta_try, l1::WorkCounters* counters = nullptr,
                             double upper = std::numeric_limits<double>::infinity());

struct AcceptedStep {
    double t = 0.0;     ///< time reached by the step
    double step = 0.0;  ///< Delta_n
    double error = 0.0;
    int halvings = 0;
    int doublings = 0;
};

struct SolveReport {
    std::size_t accepted_steps = 0;
    std::size_t rejected_trials = 0;
    std::size_t trials = 0;
    l1::WorkCounters work;
    double wall_time_s = 0.0;  ///< nondeterministic
    std::vector<AcceptedStep> steps;
};

struct SolveResult {
    SolutionHistory history;
    SolveReport report;
};

/// Called after every accepted step with the state so far.
using StepObserver = std::function<void(const SolutionHistory&, const SolveReport&)>;

/// Initial field: IC at interior nodes, boundary values at t = 0 on the ends.
SolutionHistory initial_history(const ProblemSpec& spec);

/// Adaptive march until the last node reaches t_end; the final step is
/// capped so it lands on t_end.
SolveResult solve_adaptive(const ProblemSpec& spec, const StepControl& control, double t_end,
                           const StepObserver& observer = {});

/// Uniform march with ceil(t_end / delta) steps of exactly delta.
SolveResult solve_fixed(const ProblemSpec& spec, double delta, double t_end, const StepObserver& observer = {});

}  // namespace vofde
