#include "vofde/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "vofde/error.hpp"

namespace vofde::special {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Lanczos approximation, g = 7, nine terms.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

// Valid for x >= 0.5.
double lanczos_gamma(double x) {
    const double z = x - 1.0;
    double a = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) {
        a += kLanczos[i] / (z + static_cast<double>(i));
    }
    const double t = z + kLanczosG + 0.5;
    // Split the power so t^(z+1/2) does not overflow before e^-t brings it back.
    const double half = std::pow(t, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * a;
}

// sin(pi x) with exact zeros at the integers.
double sinpi(double x) {
    double r = std::fmod(x, 2.0);
    if (r < -1.0) r += 2.0;
    if (r > 1.0) r -= 2.0;
    if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
    if (r > 0.5) r = 1.0 - r;
    if (r < -0.5) r = -1.0 - r;
    return std::sin(std::numbers::pi * r);
}

void check_parameter(double m) {
    if (!(m >= 0.0 && m < 1.0)) {
        std::ostringstream os;
        os << "elliptic parameter m = " << m << " outside [0, 1)";
        throw DomainError(os.str());
    }
}

}  // namespace

double gamma_fn(double x) {
    if (!(x > 0.0) || std::isnan(x)) {
        std::ostringstream os;
        os << "gamma_fn: argument " << x << " must be positive";
        throw DomainError(os.str());
    }
    if (x <= 21.0 && x == std::floor(x)) {
        double f = 1.0;
        for (int k = 2; k < static_cast<int>(x); ++k) f *= k;
        return f;
    }
    if (x < 0.5) {
        return lanczos_gamma(x + 1.0) / x;
    }
    return lanczos_gamma(x);
}

double rgamma(double x) {
    if (!std::isfinite(x)) {
        throw DomainError("rgamma: argument must be finite");
    }
    if (x > 0.0) {
        return 1.0 / gamma_fn(x);
    }
    if (x == std::floor(x)) {
        return 0.0;
    }
    // Reflection: 1/Gamma(x) = Gamma(1 - x) sin(pi x) / pi.
    return gamma_fn(1.0 - x) * sinpi(x) / std::numbers::pi;
}

double ml_e1b(double beta, double z, const MlRegimeConfig& config) {
    if (!(beta > 0.0 && beta <= 2.0)) {
        std::ostringstream os;
        os << "ml_e1b: beta = " << beta << " outside (0, 2]";
        throw DomainError(os.str());
    }
    if (!(z <= 0.0) || !std::isfinite(z)) {
        std::ostringstream os;
        os << "ml_e1b: z = " << z << " must be finite and non-positive";
        throw DomainError(os.str());
    }
    if (!(config.series_cutoff > 0.0) || config.asymptotic_terms < 2) {
        throw DomainError("ml_e1b: invalid regime configuration");
    }

    const double inv_gamma_beta = 1.0 / gamma_fn(beta);
    if (z == 0.0) {
        return inv_gamma_beta;
    }
    const double t = -z;

    if (t <= config.series_cutoff) {
        // 1F1(beta-1; beta; t) = sum_k (beta-1)/(beta-1+k) t^k/k!, Kahan-summed.
        double sum = 1.0;
        double carry = 0.0;
        double term = 1.0;
        for (int k = 1; k < 100000; ++k) {
            term *= (beta + k - 2.0) / (beta + k - 1.0) * t / k;
            const double y = term - carry;
            const double s = sum + y;
            carry = (s - sum) - y;
            sum = s;
            if (term == 0.0 || (k > t && std::abs(term) <= kEps * 0.25 * std::abs(sum))) break;
        }
        return std::exp(z) * sum * inv_gamma_beta;
    }

    // Algebraic expansion; r_k = 1/Gamma(beta - k) by downward recurrence,
    // which hits exact zeros when beta is an integer.
    const double inv_t = 1.0 / t;
    double r = inv_gamma_beta;
    double power = 1.0;
    double sum = 0.0;
    double previous = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= config.asymptotic_terms; ++k) {
        r *= (beta - k);
        power *= inv_t;
        const double term = power * r;
        if (term == 0.0) {
            if (r == 0.0) break;  // every later term vanishes too
            continue;
        }
        if (std::abs(term) >= previous) break;  // smallest-term truncation
        previous = std::abs(term);
        sum += (k % 2 == 1) ? term : -term;
    }
    return sum;
}

double elliptic_K(double m) {
    check_parameter(m);
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    for (int i = 0; i < 64 && std::abs(a - b) > kEps * a; ++i) {
        const double next_a = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = next_a;
    }
    return std::numbers::pi / (a + b);
}

double jacobi_dn(double u, double m) {
    check_parameter(m);
    if (!std::isfinite(u)) {
        throw DomainError("jacobi_dn: argument must be finite");
    }
    if (m == 0.0 || u == 0.0) {
        return 1.0;
    }

    // dn is even with period 2K; fold u into [0, K].
    const double period = 2.0 * elliptic_K(m);
    u = std::abs(u - period * std::round(u / period));

    constexpr int kMaxLevels = 32;
    std::array<double, kMaxLevels + 1> a{};
    std::array<double, kMaxLevels + 1> c{};
    a[0] = 1.0;
    c[0] = std::sqrt(m);
    double b = std::sqrt(1.0 - m);
    int levels = 0;
    while (levels < kMaxLevels && std::abs(c[levels]) > kEps) {
        const double an = a[levels];
        ++levels;
        a[levels] = 0.5 * (an + b);
        c[levels] = 0.5 * (an - b);
        b = std::sqrt(an * b);
    }

    double phi = std::ldexp(a[levels] * u, levels);
    for (int n = levels; n >= 1; --n) {
        phi = 0.5 * (phi + std::asin(c[n] / a[n] * std::sin(phi)));
    }
    // The textbook ratio cos(phi_0)/cos(phi_1 - phi_0) is 0/0 at u = K.
    const double sn = std::sin(phi);
    return std::sqrt(std::max(0.0, 1.0 - m * sn * sn));
}

}  // namespace vofde::special
