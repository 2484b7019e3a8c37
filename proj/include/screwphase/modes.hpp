// Separated solutions of the deformed Schrodinger equation
//   -(hbar^2/2m) { -k^2 + (1/rho) d_rho(rho d_rho)
//                  + (1/rho^2)(d_phi - i beta k)^2 } psi = E psi
// with the shifted angular momentum l -> l - k*beta, plus a grid residual
// check that closes the loop against the defect-geometry operator.

#pragma once

#include <complex>
#include <optional>

#include "screwphase/geometry.hpp"

namespace screwphase {

struct PhysicalConstants {
    double hbar = 1.0;
    double mass = 1.0;
};

/// One separated mode: integer angular number l, axial wavenumber k,
/// radial wavenumber kappa >= 0. The radial order nu = |l - k*beta| and the
/// energy E = hbar^2 (k^2 + kappa^2) / (2m) are derived on construction and
/// cross-checked; E never depends on beta.
class Mode {
public:
    static Mode make(int l, double k, double kappa, const ScrewDefect& defect,
                     const PhysicalConstants& consts = {});

    int l() const { return l_; }
    double k() const { return k_; }
    double kappa() const { return kappa_; }
    double nu() const { return nu_; }
    double energy() const { return energy_; }

private:
    Mode(int l, double k, double kappa, double nu, double energy)
        : l_(l), k_(k), kappa_(kappa), nu_(nu), energy_(energy) {}
    int l_;
    double k_, kappa_, nu_, energy_;
};

/// psi(rho, phi, z, t) = exp(-i E t / hbar) exp(i k z) exp(i l phi) J_nu(kappa rho).
std::complex<double> mode_eval(const Mode& mode, const ScrewDefect& defect,
                               const PhysicalConstants& consts, const CylPoint& p,
                               double t);

/// Samples the mode on the grid (z = 0, t = 0), applies the discrete
/// Laplace-Beltrami operator, and returns
///   max_interior |H psi - E psi| / max_interior |psi|.
/// energy_override substitutes a trial energy for the mode's own (used by
/// the mode-check negative control); boundary rows are excluded.
double pde_residual(const Mode& mode, const ScrewDefect& defect,
                    const PhysicalConstants& consts, const CylGrid& grid,
                    std::optional<double> energy_override = std::nullopt);

/// The two routes to the angular dependence of the deformed solution:
///   direct   -- exp(i l phi), the angular factor of the single-valued mode;
///   factored -- exp(i k beta (phi - phi0)) * exp(i l phi), the Dirac phase
///               factor applied to the defect-free angular factor.
/// Their ratio is the accumulated Dirac phase between phi0 and phi; after a
/// full loop it equals exp(i k b0).
struct AngularFactorPair {
    std::complex<double> direct;
    std::complex<double> factored;
    std::complex<double> extra_phase() const { return factored / direct; }
};

AngularFactorPair phase_factor_equivalence(int l, double k, const ScrewDefect& defect,
                                           const CylPoint& p, double phi0 = 0.0);

}  // namespace screwphase
