#include "vofde/stepper.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <sstream>

#include "vofde/error.hpp"

namespace vofde {

void StepControl::validate() const {
    auto bad = [](const char* what) { throw ConfigError(std::string("step control: ") + what); };
    if (!(tolerance > 0.0) || !std::isfinite(tolerance)) bad("tolerance must be positive");
    if (!(min_step > 0.0)) bad("min_step must be positive");
    if (!(min_step <= initial_step)) bad("min_step must not exceed initial_step");
    if (!(initial_step <= max_step)) bad("initial_step must not exceed max_step");
    if (!std::isfinite(max_step)) bad("max_step must be finite");
    if (max_halvings < 1 || max_doublings < 1) bad("max_halvings and max_doublings must be >= 1");
}

double error_indicator(const Field& full, const Field& half) {
    if (full.size() != half.size()) {
        throw MeshError("error_indicator: field lengths differ");
    }
    double e = 0.0;
    for (std::size_t k = 1; k + 1 < full.size(); ++k) {
        e = std::max(e, std::abs(full[k] - half[k]));
    }
    return e;
}

TrialResult try_step(const ProblemSpec& spec, const SolutionHistory& history, double delta,
                     l1::WorkCounters* counters) {
    const double t_n = history.back_time();
    const double h = 0.5 * delta;
    if (!(t_n + h > t_n)) {
        std::ostringstream os;
        os.precision(17);
        os << "step " << delta << " is below the representable spacing at t = " << t_n;
        throw StepUnderflowError(os.str());
    }
    TrialResult r;
    r.full = l1::implicit_step(spec, history, delta, counters);
    r.mid = l1::implicit_step(spec, history, h, counters);
    const Field mid_increment = field_difference(r.mid, history.back());
    const HistoryView extended(history, t_n + h, r.mid, mid_increment);
    r.half = l1::implicit_step(spec, extended, h, counters);
    r.error = error_indicator(r.full, r.half);
    return r;
}

StepSearch search_step(const StepControl& control, double delta_try,
                       const std::function<double(double)>& error_of, double upper) {
    const double hi = std::min(control.max_step, upper);
    const double lo = std::min(control.min_step, hi);
    const double tol = control.tolerance;

    StepSearch s;
    double delta = std::clamp(delta_try, lo, hi);
    double err = error_of(delta);
    ++s.trials;

    if (err < tol) {
        s.step = delta;
        s.error = err;
        while (delta < hi && s.doublings < control.max_doublings) {
            const double next = std::min(2.0 * delta, hi);
            const double e = error_of(next);
            ++s.trials;
            ++s.doublings;
            if (!(e < tol)) {
                ++s.rejected;
                break;
            }
            delta = next;
            s.step = next;
            s.error = e;
        }
        return s;
    }

    ++s.rejected;
    while (true) {
        if (delta <= lo || s.halvings >= control.max_halvings) {
            std::ostringstream os;
            os.precision(6);
            os << "controller failure: local error " << err << " >= tolerance " << tol << " at step " << delta;
            throw ControllerFailure(os.str(), err, delta);
        }
        delta = std::max(0.5 * delta, lo);
        ++s.halvings;
        err = error_of(delta);
        ++s.trials;
        if (err < tol) {
            s.step = delta;
            s.error = err;
            return s;
        }
        ++s.rejected;
    }
}

StepOutcome adaptive_advance(const ProblemSpec& spec, SolutionHistory& history, const StepControl& control,
                             double delta_try, l1::WorkCounters* counters, double upper) {
    std::optional<TrialResult> best;
    double best_step = 0.0;
    const double tol = control.tolerance;
    const StepSearch s = search_step(
        control, delta_try,
        [&](double delta) {
            TrialResult r = try_step(spec, history, delta, counters);
            const double e = r.error;
            if (e < tol) {
                best = std::move(r);
                best_step = delta;
            }
            return e;
        },
        upper);

    // The search accepts the last passing trial, which is the one cached.
    StepOutcome out;
    out.accepted_step = s.step;
    out.error_indicator = s.error;
    out.halvings_used = s.halvings;
    out.doublings_used = s.doublings;
    out.trials = s.trials;
    out.rejected_trials = s.rejected;
    const double h = 0.5 * best_step;
    history.push(h, best->mid);
    history.push(h, best->half);
    out.accepted_fields.push_back(std::move(best->mid));
    out.accepted_fields.push_back(std::move(best->half));
    return out;
}

SolutionHistory initial_history(const ProblemSpec& spec) {
    const SpatialGrid& grid = spec.grid;
    Field u0(grid.size());
    for (std::size_t j = 1; j + 1 < u0.size(); ++j) u0[j] = spec.initial(grid.x(j));
    u0.front() = spec.bc_left(0.0);
    u0.back() = spec.bc_right(0.0);
    return SolutionHistory(std::move(u0));
}

namespace {

using Clock = std::chrono::steady_clock;

// Last node counts as t_end when within this relative distance; the two half
// steps may land an ulp short of the requested end time.
constexpr double kEndSlack = 1e-12;

bool reached(double t, double t_end) { return t >= t_end * (1.0 - kEndSlack); }

void check_problem(const ProblemSpec& spec, double t_end) {
    if (!(t_end > 0.0) || !std::isfinite(t_end)) {
        throw ConfigError("t_end must be positive and finite");
    }
    if (!(spec.diffusivity > 0.0)) {
        throw ConfigError("diffusivity K must be positive");
    }
}

}  // namespace

SolveResult solve_adaptive(const ProblemSpec& spec, const StepControl& control, double t_end,
                           const StepObserver& observer) {
    check_problem(spec, t_end);
    control.validate();
    const auto start = Clock::now();
    SolveResult result{initial_history(spec), {}};
    SolveReport& rep = result.report;

    double delta = control.initial_step;
    while (!reached(result.history.back_time(), t_end)) {
        const double remaining = t_end - result.history.back_time();
        const StepOutcome o =
            adaptive_advance(spec, result.history, control, std::min(delta, remaining), &rep.work, remaining);
        ++rep.accepted_steps;
        rep.trials += static_cast<std::size_t>(o.trials);
        rep.rejected_trials += static_cast<std::size_t>(o.rejected_trials);
        rep.steps.push_back({result.history.back_time(), o.accepted_step, o.error_indicator, o.halvings_used,
                             o.doublings_used});
        delta = o.accepted_step;
        rep.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
        if (observer) observer(result.history, rep);
    }
    rep.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
}

SolveResult solve_fixed(const ProblemSpec& spec, double delta, double t_end, const StepObserver& observer) {
    check_problem(spec, t_end);
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw ConfigError("fixed step must be positive and finite");
    }
    const auto start = Clock::now();
    SolveResult result{initial_history(spec), {}};
    SolveReport& rep = result.report;

    const auto steps = static_cast<std::size_t>(std::ceil(t_end / delta * (1.0 - kEndSlack)));
    for (std::size_t n = 0; n < steps; ++n) {
        Field u = l1::implicit_step(spec, result.history, delta, &rep.work);
        result.history.push(delta, std::move(u));
        ++rep.accepted_steps;
        ++rep.trials;
        rep.steps.push_back({result.history.back_time(), delta, 0.0, 0, 0});
        rep.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
        if (observer) observer(result.history, rep);
    }
    rep.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
}

}  // namespace vofde
