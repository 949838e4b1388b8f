#include "vofde/l1.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "vofde/error.hpp"
#include "vofde/special.hpp"

namespace vofde::l1 {

double pow0(double base, double p) {
    if (base == 0.0 && p >= 0.0) return 0.0;
    return std::pow(base, p);
}

namespace {

void check_order(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        std::ostringstream os;
        os << "order " << gamma << " outside [0, 1]";
        throw DomainError(os.str());
    }
}

// Per-step quantities shared by every order value: with b_m = t_n - t_{m+1}
// and tau = t_{m+1} - t_m,
//   (b_m + tau)^p - b_m^p = exp(p log b_m) * expm1(p log1p(tau / b_m)),
// which avoids cancelling two nearly equal powers when tau << b_m.
class WeightTable {
public:
    template <class Times>
    WeightTable(const Times& times, std::size_t n) : n_(n), log_b_(n - 1), log1p_ratio_(n - 1), tau_(n) {
        const double tn = times(n);
        for (std::size_t m = 0; m < n; ++m) {
            tau_[m] = times(m + 1) - times(m);
        }
        for (std::size_t m = 0; m + 1 < n; ++m) {
            const double b = tn - times(m + 1);
            log_b_[m] = std::log(b);
            log1p_ratio_[m] = std::log1p(tau_[m] / b);
        }
    }

    double last_step() const noexcept { return tau_[n_ - 1]; }

    // Fills out[0..n-1] with scale * T^{m,n}.
    void fill(double gamma, double scale, std::vector<double>& out) const {
        const double p = 1.0 - gamma;
        out.resize(n_);
        for (std::size_t m = 0; m + 1 < n_; ++m) {
            out[m] = std::exp(p * log_b_[m]) * std::expm1(p * log1p_ratio_[m]) * (scale / tau_[m]);
        }
        const double last = tau_[n_ - 1];
        out[n_ - 1] = (pow0(last, p) - pow0(0.0, p)) * (scale / last);
    }

private:
    std::size_t n_;
    std::vector<double> log_b_;
    std::vector<double> log1p_ratio_;
    std::vector<double> tau_;
};

void check_times(std::span<const double> times) {
    if (times.size() < 2) {
        throw MeshError("caputo_weights needs at least two time nodes");
    }
    if (times[0] != 0.0) {
        throw MeshError("time mesh must start at t_0 = 0");
    }
    for (std::size_t m = 1; m < times.size(); ++m) {
        if (!(times[m] > times[m - 1]) || !std::isfinite(times[m])) {
            throw MeshError("time mesh must be strictly increasing");
        }
    }
}

CaputoWeights weights_impl(std::span<const double> times, double gamma, bool scaled) {
    check_times(times);
    check_order(gamma);
    const std::size_t n = times.size() - 1;
    WeightTable table([&](std::size_t m) { return times[m]; }, n);
    const double scale = scaled ? std::pow(table.last_step(), gamma) : 1.0;
    CaputoWeights w;
    table.fill(gamma, scale, w.values);
    return w;
}

}  // namespace

CaputoWeights caputo_weights(std::span<const double> times, double gamma) {
    return weights_impl(times, gamma, false);
}

CaputoWeights scaled_weights(std::span<const double> times, double gamma) {
    return weights_impl(times, gamma, true);
}

double memory_operator(const HistoryView& history, std::span<const double> scaled, std::size_t j) {
    const std::size_t n = history.size();
    double acc = 0.0;
    for (std::size_t m = 0; m + 1 < n; ++m) {
        acc += scaled[m] * history.increment(m)[j];
    }
    return history.back()[j] - acc;
}

TridiagonalSystem assemble_step(const ProblemSpec& spec, const HistoryView& history, double t_new,
                                WorkCounters* counters) {
    const double t_prev = history.back_time();
    if (!(t_new > t_prev) || !std::isfinite(t_new)) {
        throw MeshError("assemble_step: new time must exceed the last history time");
    }
    const SpatialGrid& grid = spec.grid;
    const std::size_t interior = grid.interior_size();
    const std::size_t n = history.size();  // index of the node being built
    const double tau = t_new - t_prev;
    const double dx2 = grid.dx() * grid.dx();

    // Nodes with bitwise-equal order share one weight vector.
    struct Group {
        double gamma;
        double tau_pow;
        double gamma_factor;
        std::vector<double> weights;
        std::vector<std::size_t> nodes;
    };
    std::vector<Group> groups;
    std::vector<std::size_t> group_of(interior);
    if (!spec.gamma_depends_on_x) {
        const double g = sample_gamma(spec, 1, t_new);
        groups.push_back({g, 0.0, 0.0, {}, {}});
        for (std::size_t i = 0; i < interior; ++i) {
            group_of[i] = 0;
            groups[0].nodes.push_back(i);
        }
    } else {
        std::map<double, std::size_t> index;
        for (std::size_t i = 0; i < interior; ++i) {
            const double g = sample_gamma(spec, i + 1, t_new);
            auto [it, inserted] = index.try_emplace(g, groups.size());
            if (inserted) groups.push_back({g, 0.0, 0.0, {}, {}});
            group_of[i] = it->second;
            groups[it->second].nodes.push_back(i);
        }
    }

    // Memory sums: m outer, node inner; each node still accumulates in
    // increasing m, so the result does not depend on the grouping.
    std::vector<double> acc(interior, 0.0);
    const bool has_memory = n >= 2;
    std::optional<WeightTable> table;
    if (has_memory) {
        table.emplace([&](std::size_t m) { return m < n ? history.time(m) : t_new; }, n);
    }
    for (Group& gr : groups) {
        gr.tau_pow = std::pow(tau, gr.gamma);
        gr.gamma_factor = special::gamma_fn(2.0 - gr.gamma);
        if (!has_memory) continue;
        table->fill(gr.gamma, gr.tau_pow, gr.weights);
        for (std::size_t m = 0; m + 1 < n; ++m) {
            const double w = gr.weights[m];
            const Field& inc = history.increment(m);
            for (std::size_t i : gr.nodes) acc[i] += w * inc[i + 1];
        }
    }

    TridiagonalSystem sys;
    sys.lower.resize(interior);
    sys.diag.resize(interior);
    sys.upper.resize(interior);
    sys.rhs.resize(interior);
    const Field& last = history.back();
    for (std::size_t i = 0; i < interior; ++i) {
        const Group& gr = groups[group_of[i]];
        const double s = gr.gamma_factor * spec.diffusivity * gr.tau_pow / dx2;
        sys.lower[i] = i == 0 ? 0.0 : -s;
        sys.upper[i] = i + 1 == interior ? 0.0 : -s;
        sys.diag[i] = 1.0 + 2.0 * s;
        const double forcing = gr.gamma_factor * gr.tau_pow * sample_forcing(spec, i + 1, t_new);
        sys.rhs[i] = (last[i + 1] - acc[i]) + forcing;
        if (i == 0) sys.rhs[i] += s * spec.bc_left(t_new);
        if (i + 1 == interior) sys.rhs[i] += s * spec.bc_right(t_new);
    }

    if (counters) {
        counters->history_terms += static_cast<std::uint64_t>(interior) * n;
        counters->weight_vectors += has_memory ? groups.size() : 0;
    }
    return sys;
}

std::vector<double> thomas_solve(const TridiagonalSystem& sys) {
    const std::size_t n = sys.diag.size();
    if (n == 0 || sys.lower.size() != n || sys.upper.size() != n || sys.rhs.size() != n) {
        throw NumericalError("thomas_solve: inconsistent system sizes");
    }
    std::vector<double> c(n);
    std::vector<double> d(n);
    double pivot = sys.diag[0];
    for (std::size_t i = 0;; ++i) {
        if (pivot == 0.0 || !std::isfinite(pivot)) {
            throw NumericalError("thomas_solve: zero pivot");
        }
        c[i] = sys.upper[i] / pivot;
        d[i] = (sys.rhs[i] - (i == 0 ? 0.0 : sys.lower[i] * d[i - 1])) / pivot;
        if (i + 1 == n) break;
        pivot = sys.diag[i + 1] - sys.lower[i + 1] * c[i];
    }
    std::vector<double> x(n);
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    return x;
}

Field implicit_step(const ProblemSpec& spec, const HistoryView& history, double delta,
                    WorkCounters* counters) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw MeshError("implicit_step: step must be positive and finite");
    }
    const double t_new = history.back_time() + delta;
    if (!(t_new > history.back_time())) {
        throw StepUnderflowError("implicit_step: step below the representable spacing at t_n");
    }
    const std::vector<double> interior = thomas_solve(assemble_step(spec, history, t_new, counters));
    Field u(spec.grid.size());
    u.front() = spec.bc_left(t_new);
    u.back() = spec.bc_right(t_new);
    for (std::size_t i = 0; i < interior.size(); ++i) {
        if (!std::isfinite(interior[i])) {
            throw NumericalError("implicit_step: non-finite solution value");
        }
        u[i + 1] = interior[i];
    }
    if (counters) ++counters->implicit_steps;
    return u;
}

}  // namespace vofde::l1
