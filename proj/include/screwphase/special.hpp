// Self-contained special functions: real-order Bessel J and the gamma
// function. No external special-function dependency; accuracy targets are
// covered by the unit tests (relative 1e-10 for J_nu over nu in [0, 20],
// x in [0, 50], and 1e-12 for gamma on [0.5, 40]).

#pragma once

namespace screwphase::special {

/// Gamma function by the Lanczos approximation (g = 7, 9 coefficients),
/// extended to all z > 0 via Gamma(z) = Gamma(z+1)/z below 0.5.
/// Throws std::domain_error for z <= 0.
double lanczos_gamma(double z);

/// log Gamma(z) for z > 0, same Lanczos kernel.
double lanczos_lgamma(double z);

/// Bessel function of the first kind, real order nu >= 0, x >= 0.
///
/// Branch selection:
///  - ascending power series (extended precision) for x <= 15 or nu >= x,
///    where the alternating sum is well conditioned;
///  - otherwise Hankel's large-argument expansion at the fractional order
///    mu = nu - floor(nu) and mu + 1, followed by upward recurrence
///    J_{m+1} = (2m/x) J_m - J_{m-1}, which is stable while the order
///    stays below x.
/// Throws std::domain_error for negative nu or x.
double bessel_j(double nu, double x);

}  // namespace screwphase::special
