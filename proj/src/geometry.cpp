#include "screwphase/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace screwphase {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive_rho(const CylPoint& p) {
    if (!(p.rho > 0.0))
        throw std::domain_error("rho must be positive (the defect line rho = 0 is excluded)");
}

}  // namespace

ScrewDefect ScrewDefect::from_b0(double b0) {
    if (!(b0 >= 0.0)) throw std::domain_error("b0 must be non-negative");
    return ScrewDefect(b0);
}

ScrewDefect ScrewDefect::from_beta(double beta) {
    if (!(beta >= 0.0)) throw std::domain_error("beta must be non-negative");
    return ScrewDefect(beta * kTwoPi);
}

double ScrewDefect::beta() const { return b0_ / kTwoPi; }

std::array<std::array<double, 3>, 3> Metric3::rows() const {
    std::array<std::array<double, 3>, 3> r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = at(i, j);
    return r;
}

CylGrid::CylGrid(double rho_min, double rho_max, int n_rho, int n_phi)
    : rho_min_(rho_min), rho_max_(rho_max), n_rho_(n_rho), n_phi_(n_phi) {
    if (!(rho_min > 0.0)) throw std::invalid_argument("grid rho_min must be positive");
    if (!(rho_max > rho_min)) throw std::invalid_argument("grid rho_max must exceed rho_min");
    if (n_rho < 3) throw std::invalid_argument("grid n_rho must be at least 3");
    if (n_phi < 3) throw std::invalid_argument("grid n_phi must be at least 3");
    h_rho_ = (rho_max - rho_min) / (n_rho - 1);
    h_phi_ = kTwoPi / n_phi;
}

CylGrid CylGrid::refined() const {
    return CylGrid(rho_min_, rho_max_, 2 * n_rho_ - 1, 2 * n_phi_);
}

Metric3 metric_tensor(const ScrewDefect& defect, const CylPoint& p) {
    require_positive_rho(p);
    const double beta = defect.beta();
    Metric3 g;
    g.at(0, 0) = 1.0;
    g.at(1, 1) = beta * beta + p.rho * p.rho;
    g.at(1, 2) = beta;
    g.at(2, 1) = beta;
    g.at(2, 2) = 1.0;
    return g;
}

Metric3 metric_inverse(const ScrewDefect& defect, const CylPoint& p) {
    require_positive_rho(p);
    const double beta = defect.beta();
    const double inv_rho2 = 1.0 / (p.rho * p.rho);
    Metric3 g;
    g.at(0, 0) = 1.0;
    g.at(1, 1) = inv_rho2;
    g.at(1, 2) = -beta * inv_rho2;
    g.at(2, 1) = -beta * inv_rho2;
    g.at(2, 2) = 1.0 + beta * beta * inv_rho2;
    return g;
}

double metric_det(const ScrewDefect& defect, const CylPoint& p) {
    require_positive_rho(p);
    (void)defect;  // the beta^2 cofactor terms cancel identically
    return p.rho * p.rho;
}

double gauge_potential(double k, const ScrewDefect& defect, const CylPoint& p) {
    require_positive_rho(p);
    return k * defect.beta() / p.rho;
}

std::vector<std::complex<double>> laplace_beltrami_apply(
    const ScrewDefect& defect, const CylGrid& grid,
    std::span<const std::complex<double>> field, double k) {
    using cplx = std::complex<double>;
    if (field.size() != grid.size())
        throw std::invalid_argument("field size must match grid size");

    const int nr = grid.n_rho();
    const int np = grid.n_phi();
    const double hr = grid.h_rho();
    const double hp = grid.h_phi();
    const double inv_hr2 = 1.0 / (hr * hr);
    const double inv_hp2 = 1.0 / (hp * hp);
    const double k2 = k * k;

    // Phase links for the covariant azimuthal derivative (d_phi - i beta k):
    // on e^{i l phi} the coupled stencil has eigenvalue
    // (2 cos((l - beta k) h_phi) - 2) / h_phi^2, a function of l - beta k only.
    const double theta = defect.beta() * k * hp;
    const cplx link_plus(std::cos(theta), -std::sin(theta));
    const cplx link_minus = std::conj(link_plus);

    std::vector<cplx> out(field.size());
    const auto idx = [&](int i, int j) { return grid.index(i, j); };

    for (int i = 0; i < nr; ++i) {
        const double rho = grid.rho(i);
        const double inv_rho = 1.0 / rho;
        const double inv_rho2 = inv_rho * inv_rho;
        for (int j = 0; j < np; ++j) {
            const int jp = (j + 1) % np;
            const int jm = (j + np - 1) % np;
            const cplx f = field[idx(i, j)];

            cplx radial;
            if (i > 0 && i < nr - 1) {
                // conservative flux form of (1/rho) d_rho (rho d_rho)
                const cplx fp = field[idx(i + 1, j)];
                const cplx fm = field[idx(i - 1, j)];
                radial = inv_rho * inv_hr2 *
                         ((rho + 0.5 * hr) * (fp - f) - (rho - 0.5 * hr) * (f - fm));
            } else if (i == 0) {
                // one-sided second-order psi'' + psi'/rho (3-point fallback
                // for the minimal grid; boundary rows are excluded from
                // residual checks either way)
                const cplx f1 = field[idx(1, j)];
                const cplx f2 = field[idx(2, j)];
                const cplx d2 = nr >= 4
                                    ? (2.0 * f - 5.0 * f1 + 4.0 * f2 - field[idx(3, j)]) * inv_hr2
                                    : (f - 2.0 * f1 + f2) * inv_hr2;
                const cplx d1 = (-3.0 * f + 4.0 * f1 - f2) / (2.0 * hr);
                radial = d2 + inv_rho * d1;
            } else {
                const cplx f1 = field[idx(nr - 2, j)];
                const cplx f2 = field[idx(nr - 3, j)];
                const cplx d2 = nr >= 4
                                    ? (2.0 * f - 5.0 * f1 + 4.0 * f2 - field[idx(nr - 4, j)]) * inv_hr2
                                    : (f - 2.0 * f1 + f2) * inv_hr2;
                const cplx d1 = (3.0 * f - 4.0 * f1 + f2) / (2.0 * hr);
                radial = d2 + inv_rho * d1;
            }

            const cplx azimuthal = inv_rho2 * inv_hp2 *
                                   (link_plus * field[idx(i, jp)] - 2.0 * f +
                                    link_minus * field[idx(i, jm)]);

            out[idx(i, j)] = -k2 * f + radial + azimuthal;
        }
    }
    return out;
}

}  // namespace screwphase
