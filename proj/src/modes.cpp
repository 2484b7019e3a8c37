#include "screwphase/modes.hpp"

#include <cmath>
#include <stdexcept>

#include "screwphase/phase.hpp"
#include "screwphase/special.hpp"

namespace screwphase {

Mode Mode::make(int l, double k, double kappa, const ScrewDefect& defect,
                const PhysicalConstants& consts) {
    if (!(consts.hbar > 0.0) || !(consts.mass > 0.0))
        throw std::domain_error("hbar and mass must be positive");
    if (!(kappa >= 0.0)) throw std::domain_error("kappa must be non-negative");
    const double nu = std::abs(l - k * defect.beta());
    const double energy =
        consts.hbar * consts.hbar * (k * k + kappa * kappa) / (2.0 * consts.mass);
    return Mode(l, k, kappa, nu, energy);
}

std::complex<double> mode_eval(const Mode& mode, const ScrewDefect& defect,
                               const PhysicalConstants& consts, const CylPoint& p,
                               double t) {
    (void)defect;  // the defect enters through the mode's order nu
    if (!(p.rho > 0.0))
        throw std::domain_error("rho must be positive (the defect line rho = 0 is excluded)");
    const double radial = special::bessel_j(mode.nu(), mode.kappa() * p.rho);
    const double arg = -mode.energy() * t / consts.hbar + mode.k() * p.z + mode.l() * p.phi;
    return radial * std::complex<double>(std::cos(arg), std::sin(arg));
}

double pde_residual(const Mode& mode, const ScrewDefect& defect,
                    const PhysicalConstants& consts, const CylGrid& grid,
                    std::optional<double> energy_override) {
    using cplx = std::complex<double>;
    const double energy = energy_override.value_or(mode.energy());
    const double h2m = consts.hbar * consts.hbar / (2.0 * consts.mass);

    std::vector<cplx> psi(grid.size());
    for (int i = 0; i < grid.n_rho(); ++i)
        for (int j = 0; j < grid.n_phi(); ++j)
            psi[grid.index(i, j)] =
                mode_eval(mode, defect, consts, {grid.rho(i), grid.phi(j), 0.0}, 0.0);

    const auto lap = laplace_beltrami_apply(defect, grid, psi, mode.k());

    double max_resid = 0.0, max_psi = 0.0;
    for (int i = 1; i < grid.n_rho() - 1; ++i) {
        for (int j = 0; j < grid.n_phi(); ++j) {
            const auto s = grid.index(i, j);
            const double r = std::abs(-h2m * lap[s] - energy * psi[s]);
            const double a = std::abs(psi[s]);
            if (r > max_resid) max_resid = r;
            if (a > max_psi) max_psi = a;
        }
    }
    if (max_psi == 0.0) return 0.0;
    return max_resid / max_psi;
}

AngularFactorPair phase_factor_equivalence(int l, double k, const ScrewDefect& defect,
                                           const CylPoint& p, double phi0) {
    if (!(p.rho > 0.0))
        throw std::domain_error("rho must be positive (the defect line rho = 0 is excluded)");
    const auto polar = [](double arg) {
        return std::complex<double>(std::cos(arg), std::sin(arg));
    };
    const std::complex<double> direct = polar(l * p.phi);
    const double gamma = dirac_phase_closed(k, defect, phi0, p.phi).gamma;
    const std::complex<double> factored = polar(gamma) * direct;
    return {direct, factored};
}

}  // namespace screwphase
