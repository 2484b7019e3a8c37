// Dirac phase gamma = integral of k*beta dphi along a trajectory, in closed
// form and by trapezoidal quadrature over sampled paths. Phases are reported
// unwrapped; wrapping would break additivity and the noise variance tests.

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "screwphase/geometry.hpp"

namespace screwphase {

/// Angular trajectory phi(t) sampled on t_0 = 0 < t_1 < ... < t_n = T.
/// A cyclic path closes one full turn: phi_n - phi_0 = 2*pi.
class AngularPath {
public:
    AngularPath(std::vector<double> t, std::vector<double> phi, bool cyclic);

    /// Uniform samples t_j = j*T/n, phi_j = phi0 + 2*pi*j/n, cyclic.
    static AngularPath uniform_cycle(double period, int n_steps, double phi0 = 0.0);

    const std::vector<double>& t() const { return t_; }
    const std::vector<double>& phi() const { return phi_; }
    double period() const { return t_.back(); }
    double phi0() const { return phi_.front(); }
    bool cyclic() const { return cyclic_; }
    std::size_t n_samples() const { return t_.size(); }

private:
    std::vector<double> t_, phi_;
    bool cyclic_;
};

struct PhaseResult {
    enum class Method { closed_form, quadrature };
    double gamma = 0.0;
    Method method = Method::closed_form;
};

/// gamma = k * beta * (phi1 - phi0); the integrand is constant when the
/// Burgers vector is noiseless.
PhaseResult dirac_phase_closed(double k, const ScrewDefect& defect,
                               double phi0, double phi1);

/// Trapezoidal approximation of integral k * beta(t) * dphi, with beta
/// sampled at the path's time nodes (one sample per node).
PhaseResult dirac_phase_quadrature(double k, std::span<const double> beta_samples,
                                   const AngularPath& path);

/// exp(i*gamma); unit modulus by construction.
std::complex<double> phase_factor(const PhaseResult& result);

}  // namespace screwphase
