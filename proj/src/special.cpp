#include "screwphase/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace screwphase::special {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

// Lanczos g = 7, 9 coefficients.
constexpr long double kLanczos[9] = {
    0.99999999999980993L,    676.5203681218851L,   -1259.1392167224028L,
    771.32342877765313L,    -176.61502916214059L,  12.507343278686905L,
    -0.13857109526572012L,   9.9843695780195716e-6L, 1.5056327351493116e-7L,
};

long double lanczos_sum(long double z) {
    // Rational part A_g(z) evaluated at z (already shifted so z >= 0.5).
    long double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z - 1 + i);
    return acc;
}

long double gamma_ld(long double z) {
    if (z < 0.5L) return gamma_ld(z + 1.0L) / z;
    const long double t = z + 6.5L;  // z + g - 0.5
    return std::sqrt(2.0L * kPi) * std::pow(t, z - 0.5L) * std::exp(-t) *
           lanczos_sum(z);
}

long double lgamma_ld(long double z) {
    if (z < 0.5L) return lgamma_ld(z + 1.0L) - std::log(z);
    const long double t = z + 6.5L;
    return 0.5L * std::log(2.0L * kPi) + (z - 0.5L) * std::log(t) - t +
           std::log(lanczos_sum(z));
}

// Ascending power series
//   J_nu(x) = (x/2)^nu / Gamma(nu+1) * sum_m (-(x^2/4))^m / (m! (nu+1)_m),
// summed in extended precision. Well conditioned for x <= 15 (worst
// cancellation ~3e6 at nu = 0, x = 15) and for nu >= x (monotone region).
long double series_j(long double nu, long double x) {
    if (x == 0.0L) return nu == 0.0L ? 1.0L : 0.0L;
    const long double q = -0.25L * x * x;
    long double term = 1.0L, sum = 1.0L;
    for (int m = 1; m < 400; ++m) {
        term *= q / (static_cast<long double>(m) * (nu + m));
        sum += term;
        if (std::abs(term) < std::numeric_limits<long double>::epsilon() * std::abs(sum) &&
            std::abs(q) < static_cast<long double>(m) * (nu + m))
            break;
    }
    const long double log_pref = nu * std::log(0.5L * x) - lgamma_ld(nu + 1.0L);
    return std::exp(log_pref) * sum;
}

// Hankel's large-argument expansion
//   J_nu(x) ~ sqrt(2/(pi x)) [ P cos(w) - Q sin(w) ],  w = x - nu pi/2 - pi/4,
// with the asymptotic P/Q series truncated at the smallest term. Accurate
// to ~1e-14 for x >= 15 when nu < 2 (the only orders it is used at).
long double hankel_j(long double nu, long double x) {
    const long double mu4 = 4.0L * nu * nu;
    long double p = 1.0L, q = 0.0L;
    long double term = 1.0L;
    long double prev = std::numeric_limits<long double>::max();
    for (int i = 1; i <= 40; ++i) {
        const long double odd = 2.0L * i - 1.0L;
        term *= (mu4 - odd * odd) / (static_cast<long double>(i) * 8.0L * x);
        if (std::abs(term) >= prev) break;  // asymptotic tail starts growing
        prev = std::abs(term);
        // cycle of signs: +Q, -P, -Q, +P for i = 1, 2, 3, 4 (mod 4)
        switch (i % 4) {
            case 1: q += term; break;
            case 2: p -= term; break;
            case 3: q -= term; break;
            default: p += term; break;
        }
        if (prev < 1e-20L) break;
    }
    const long double w = x - nu * (0.5L * kPi) - 0.25L * kPi;
    return std::sqrt(2.0L / (kPi * x)) * (p * std::cos(w) - q * std::sin(w));
}

}  // namespace

double lanczos_gamma(double z) {
    if (!(z > 0.0)) throw std::domain_error("lanczos_gamma requires z > 0");
    return static_cast<double>(gamma_ld(static_cast<long double>(z)));
}

double lanczos_lgamma(double z) {
    if (!(z > 0.0)) throw std::domain_error("lanczos_lgamma requires z > 0");
    return static_cast<double>(lgamma_ld(static_cast<long double>(z)));
}

double bessel_j(double nu, double x) {
    if (!(nu >= 0.0) || !(x >= 0.0))
        throw std::domain_error("bessel_j requires nu >= 0 and x >= 0");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;

    const long double nu_l = nu, x_l = x;
    if (x_l <= 15.0L || nu_l >= x_l)
        return static_cast<double>(series_j(nu_l, x_l));

    // Seed at the fractional order and recur upward (order < x throughout).
    const double m_target = std::floor(nu);
    const long double mu = nu_l - static_cast<long double>(m_target);
    long double jm = hankel_j(mu, x_l);
    if (m_target == 0.0) return static_cast<double>(jm);
    long double jp = hankel_j(mu + 1.0L, x_l);
    long double order = mu + 1.0L;
    for (long i = 1; i < static_cast<long>(m_target); ++i) {
        const long double next = (2.0L * order / x_l) * jp - jm;
        jm = jp;
        jp = next;
        order += 1.0L;
    }
    return static_cast<double>(jp);
}

}  // namespace screwphase::special
