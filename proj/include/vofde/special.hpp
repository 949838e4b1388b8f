#pragma once

namespace vofde::special {

/// Gamma function for x > 0. Relative error below 1e-13 on (0, 3]; integer
/// arguments up to 20 return the exact factorial.
double gamma_fn(double x);

/// 1/Gamma(x) for any finite real x; exactly zero at the non-positive integers.
double rgamma(double x);

/// Regime selection for ml_e1b.
struct MlRegimeConfig {
    /// |z| at or below which the convergent series is used.
    double series_cutoff = 40.0;
    /// Upper bound on terms of the algebraic asymptotic expansion.
    int asymptotic_terms = 60;
};

/// Two-parameter Mittag-Leffler function E_{1,beta}(z) = sum_k z^k / Gamma(k + beta)
/// on the non-positive real axis, beta in (0, 2].
///
/// For |z| <= cutoff the series is evaluated after Kummer's transformation,
///   E_{1,beta}(z) = e^z / Gamma(beta) * 1F1(beta - 1; beta; -z),
/// whose terms share one sign for beta >= 1, so it does not cancel the way
/// the raw alternating series does. Beyond the cutoff the algebraic
/// expansion  sum_{k>=1} (-1)^{k-1} t^{-k} / Gamma(beta - k),  t = -z,  is
/// truncated at its smallest term; the exponentially small remainder is
/// dropped.
double ml_e1b(double beta, double z, const MlRegimeConfig& config = {});

/// Complete elliptic integral of the first kind, parameter convention
/// K(m) = int_0^{pi/2} (1 - m sin^2 t)^{-1/2} dt, 0 <= m < 1.
double elliptic_K(double m);

/// Jacobi delta amplitude dn(u | m), 0 <= m < 1, via the descending Landen
/// (AGM) sequence after reducing u modulo the period 2K(m).
double jacobi_dn(double u, double m);

}  // namespace vofde::special
