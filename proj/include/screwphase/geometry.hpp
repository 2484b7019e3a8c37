// Exact metric algebra for the screw-dislocation medium and a
// finite-difference Laplace-Beltrami operator on cylindrical grids.
//
// Coordinate order is (rho, phi, z) throughout; the defect line rho = 0 is
// excluded because the inverse metric and the gauge potential are singular
// there.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace screwphase {

/// Screw dislocation with Burgers magnitude b0; beta = b0 / (2*pi) is
/// always derived, never stored separately.
class ScrewDefect {
public:
    ScrewDefect() = default;

    static ScrewDefect from_b0(double b0);
    static ScrewDefect from_beta(double beta);

    double b0() const { return b0_; }
    double beta() const;

private:
    explicit ScrewDefect(double b0) : b0_(b0) {}
    double b0_ = 0.0;
};

/// Point in cylindrical coordinates. rho must be positive wherever the
/// metric is evaluated; operations throw std::domain_error otherwise.
struct CylPoint {
    double rho = 1.0;
    double phi = 0.0;
    double z = 0.0;
};

/// Symmetric 3x3 metric in (rho, phi, z) order.
class Metric3 {
public:
    Metric3() { m_.fill(0.0); }

    double& at(int i, int j) { return m_[static_cast<std::size_t>(3 * i + j)]; }
    double at(int i, int j) const { return m_[static_cast<std::size_t>(3 * i + j)]; }
    double operator()(int i, int j) const { return at(i, j); }

    std::array<std::array<double, 3>, 3> rows() const;

private:
    std::array<double, 9> m_;
};

/// Tensor-product grid in (rho, phi); phi is periodic on [0, 2*pi), the
/// axial direction is handled spectrally (d/dz -> i*k) and never gridded.
class CylGrid {
public:
    CylGrid(double rho_min, double rho_max, int n_rho, int n_phi);

    double rho_min() const { return rho_min_; }
    double rho_max() const { return rho_max_; }
    int n_rho() const { return n_rho_; }
    int n_phi() const { return n_phi_; }
    double h_rho() const { return h_rho_; }
    double h_phi() const { return h_phi_; }

    double rho(int i) const { return rho_min_ + h_rho_ * i; }
    double phi(int j) const { return h_phi_ * j; }

    std::size_t size() const { return static_cast<std::size_t>(n_rho_) * n_phi_; }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_phi_ + j; }

    /// Grid with both spacings halved (2*n-1 radial nodes, 2*n azimuthal).
    CylGrid refined() const;

private:
    double rho_min_, rho_max_;
    int n_rho_, n_phi_;
    double h_rho_, h_phi_;
};

/// Metric tensor of the screw-dislocation line element
///   ds^2 = (dz + beta dphi)^2 + drho^2 + rho^2 dphi^2
/// in (rho, phi, z) order.
Metric3 metric_tensor(const ScrewDefect& defect, const CylPoint& p);

/// Closed-form inverse of metric_tensor; their product is the identity.
Metric3 metric_inverse(const ScrewDefect& defect, const CylPoint& p);

/// Determinant of the metric tensor. Cofactor expansion collapses to
/// rho^2: the beta^2 terms cancel between g_pp*g_zz and g_pz^2.
double metric_det(const ScrewDefect& defect, const CylPoint& p);

/// Azimuthal component A_phi = k*beta/rho of the effective gauge
/// potential seen by an electron with axial wavenumber k.
double gauge_potential(double k, const ScrewDefect& defect, const CylPoint& p);

/// Applies the Laplace-Beltrami operator restricted to a fixed axial
/// wavenumber k:
///   L = -k^2 + (1/rho) d_rho(rho d_rho) + (1/rho^2) (d_phi - i beta k)^2
/// with centered second-order finite differences in rho and phi and
/// periodic wraparound in phi. The covariant phi derivative uses phase
/// links exp(-+ i beta k h_phi) on the neighbor couplings, which keeps the
/// stencil exactly invariant under the shift l -> l + d, beta*k -> beta*k + d.
/// Radial boundary rows use one-sided second-order stencils.
///
/// field is row-major (rho index outer, phi inner) and must match the grid.
std::vector<std::complex<double>> laplace_beltrami_apply(
    const ScrewDefect& defect, const CylGrid& grid,
    std::span<const std::complex<double>> field, double k);

}  // namespace screwphase
