#include "screwphase/phase.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace screwphase {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Kahan-compensated accumulator.
class CompensatedSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0, c_ = 0.0;
};

}  // namespace

AngularPath::AngularPath(std::vector<double> t, std::vector<double> phi, bool cyclic)
    : t_(std::move(t)), phi_(std::move(phi)), cyclic_(cyclic) {
    if (t_.size() != phi_.size() || t_.size() < 2)
        throw std::invalid_argument("angular path needs matching t and phi samples (at least 2)");
    if (t_.front() != 0.0)
        throw std::invalid_argument("angular path must start at t = 0");
    for (std::size_t i = 1; i < t_.size(); ++i)
        if (!(t_[i] > t_[i - 1]))
            throw std::invalid_argument("angular path times must be strictly increasing");
    if (cyclic_ && std::abs(phi_.back() - phi_.front() - kTwoPi) > 1e-12)
        throw std::invalid_argument("cyclic angular path must close one full turn");
}

AngularPath AngularPath::uniform_cycle(double period, int n_steps, double phi0) {
    if (!(period > 0.0)) throw std::invalid_argument("path period must be positive");
    if (n_steps < 1) throw std::invalid_argument("path needs at least one step");
    std::vector<double> t(n_steps + 1), phi(n_steps + 1);
    for (int j = 0; j <= n_steps; ++j) {
        const double frac = static_cast<double>(j) / n_steps;
        t[j] = period * frac;
        phi[j] = phi0 + kTwoPi * frac;
    }
    return AngularPath(std::move(t), std::move(phi), true);
}

PhaseResult dirac_phase_closed(double k, const ScrewDefect& defect,
                               double phi0, double phi1) {
    return {k * defect.beta() * (phi1 - phi0), PhaseResult::Method::closed_form};
}

PhaseResult dirac_phase_quadrature(double k, std::span<const double> beta_samples,
                                   const AngularPath& path) {
    if (beta_samples.size() != path.n_samples())
        throw std::invalid_argument("beta samples must match the path sample count");
    const auto& phi = path.phi();
    CompensatedSum acc;
    for (std::size_t j = 0; j + 1 < phi.size(); ++j)
        acc.add(0.5 * (beta_samples[j] + beta_samples[j + 1]) * (phi[j + 1] - phi[j]));
    return {k * acc.value(), PhaseResult::Method::quadrature};
}

std::complex<double> phase_factor(const PhaseResult& result) {
    return {std::cos(result.gamma), std::sin(result.gamma)};
}

}  // namespace screwphase
