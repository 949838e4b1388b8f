#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "vofde/mesh.hpp"

namespace vofde {

using SpaceTimeFn = std::function<double(double x, double t)>;
using SpaceFn = std::function<double(double x)>;
using TimeFn = std::function<double(double t)>;

/// Continuous problem  D_t^{gamma(x,t)} u = K u_xx + F(x,t)  on [x_left, x_right]
/// with u(x,0) = initial(x) and Dirichlet data bc_left(t), bc_right(t).
///
/// All callables must be pure; the solver may evaluate them any number of
/// times and in any order.
struct ProblemSpec {
    SpatialGrid grid;
    SpaceTimeFn gamma;
    /// False when gamma depends on t only; lets the kernel share one weight
    /// vector across all nodes. Leaving it true is always correct.
    bool gamma_depends_on_x = true;
    double diffusivity = 1.0;
    /// Empty means F = 0.
    SpaceTimeFn forcing;
    SpaceFn initial;
    TimeFn bc_left;
    TimeFn bc_right;

    ProblemSpec with_grid(SpatialGrid g) const {
        ProblemSpec copy = *this;
        copy.grid = g;
        return copy;
    }
};

/// gamma(x_j, t), checked to be finite and inside [0, 1]; throws OrderRangeError.
double sample_gamma(const ProblemSpec& spec, std::size_t j, double t);

/// F(x_j, t), or 0 when the problem is source-free.
double sample_forcing(const ProblemSpec& spec, std::size_t j, double t);

enum class Severity { warning, violation };

struct Diagnostic {
    Severity severity;
    std::string message;
};

/// Smoke test of a problem definition: gamma range on a 32x32 probe lattice
/// over the grid and [0, t_end], K > 0, and IC/BC compatibility (warning
/// only). Never throws; field evaluation errors are reported as violations.
std::vector<Diagnostic> validate(const ProblemSpec& spec, double t_end = 1.0);

bool has_violation(const std::vector<Diagnostic>& diagnostics);

}  // namespace vofde
