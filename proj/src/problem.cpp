#include "vofde/problem.hpp"

#include <cmath>
#include <exception>
#include <sstream>

#include "vofde/error.hpp"

namespace vofde {

double sample_gamma(const ProblemSpec& spec, std::size_t j, double t) {
    const double x = spec.grid.x(j);
    const double g = spec.gamma(x, t);
    if (!std::isfinite(g) || g < 0.0 || g > 1.0) {
        throw OrderRangeError(x, t, g);
    }
    return g;
}

double sample_forcing(const ProblemSpec& spec, std::size_t j, double t) {
    if (!spec.forcing) return 0.0;
    return spec.forcing(spec.grid.x(j), t);
}

namespace {

constexpr int kProbe = 32;
constexpr double kCompatTolerance = 1e-12;

std::string describe(const char* what, double x, double t, double value) {
    std::ostringstream os;
    os.precision(17);
    os << what << " at (x=" << x << ", t=" << t << "): " << value;
    return os.str();
}

}  // namespace

std::vector<Diagnostic> validate(const ProblemSpec& spec, double t_end) {
    std::vector<Diagnostic> out;

    if (!(spec.diffusivity > 0.0) || !std::isfinite(spec.diffusivity)) {
        std::ostringstream os;
        os << "diffusivity K must be positive, got " << spec.diffusivity;
        out.push_back({Severity::violation, os.str()});
    }
    if (!spec.gamma || !spec.initial || !spec.bc_left || !spec.bc_right) {
        out.push_back({Severity::violation, "gamma, initial, bc_left and bc_right must all be set"});
        return out;
    }

    const double x0 = spec.grid.x_left();
    const double x1 = spec.grid.x_right();
    const double t1 = t_end > 0.0 ? t_end : 1.0;
    try {
        for (int a = 0; a < kProbe; ++a) {
            const double x = x0 + (x1 - x0) * a / (kProbe - 1);
            bool reported = false;
            for (int b = 0; b < kProbe && !reported; ++b) {
                const double t = t1 * b / (kProbe - 1);
                const double g = spec.gamma(x, t);
                if (!std::isfinite(g) || g < 0.0 || g > 1.0) {
                    out.push_back({Severity::violation, describe("gamma outside [0, 1]", x, t, g)});
                    reported = true;
                }
            }
            // One violation per field is enough to reject the problem.
            if (reported) break;
        }
    } catch (const std::exception& e) {
        out.push_back({Severity::violation, std::string("gamma evaluation failed: ") + e.what()});
    }

    if (spec.forcing) {
        try {
            bool reported = false;
            for (int a = 0; a < kProbe && !reported; ++a) {
                const double x = x0 + (x1 - x0) * a / (kProbe - 1);
                for (int b = 0; b < kProbe && !reported; ++b) {
                    const double t = t1 * b / (kProbe - 1);
                    const double f = spec.forcing(x, t);
                    if (!std::isfinite(f)) {
                        out.push_back({Severity::violation, describe("forcing is not finite", x, t, f)});
                        reported = true;
                    }
                }
            }
        } catch (const std::exception& e) {
            out.push_back({Severity::violation, std::string("forcing evaluation failed: ") + e.what()});
        }
    }

    try {
        const double left = spec.initial(x0) - spec.bc_left(0.0);
        const double right = spec.initial(x1) - spec.bc_right(0.0);
        if (!(std::abs(left) <= kCompatTolerance)) {
            out.push_back({Severity::warning, describe("initial condition differs from bc_left", x0, 0.0, left)});
        }
        if (!(std::abs(right) <= kCompatTolerance)) {
            out.push_back({Severity::warning, describe("initial condition differs from bc_right", x1, 0.0, right)});
        }
    } catch (const std::exception& e) {
        out.push_back({Severity::violation, std::string("initial/boundary evaluation failed: ") + e.what()});
    }
    return out;
}

bool has_violation(const std::vector<Diagnostic>& diagnostics) {
    for (const auto& d : diagnostics) {
        if (d.severity == Severity::violation) return true;
    }
    return false;
}

}  // namespace vofde
