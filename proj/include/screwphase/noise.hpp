// White noise on the Burgers vector and the resulting Dirac-phase shift
// Delta gamma, with ensemble statistics and scaling sweeps. The discrete
// noise is i.i.d. Gaussian per step with variance 2D/dt (the lattice
// regularization of <N_i(t) N_j(t')> = 2D delta(t-t') delta_ij), which makes
// the variance identity Var(Delta gamma) = 2 D k^2 / T exact at any dt.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "screwphase/geometry.hpp"
#include "screwphase/phase.hpp"

namespace screwphase {

/// Noise process parameters. n_steps is derived from T/dt and must
/// reproduce T to 1e-12.
class NoiseConfig {
public:
    NoiseConfig(double D, double dt, double T, int dims = 3,
                std::uint64_t master_seed = 0);

    double D() const { return d_; }
    double dt() const { return dt_; }
    double T() const { return t_; }
    int dims() const { return dims_; }
    std::uint64_t master_seed() const { return seed_; }
    long n_steps() const { return n_steps_; }

    /// Per-component standard deviation of one discrete noise sample.
    double step_sigma() const;

private:
    double d_, dt_, t_;
    int dims_;
    std::uint64_t seed_;
    long n_steps_;
};

/// One realization of the noise: n_steps x dims samples, step-major.
class NoisePath {
public:
    NoisePath(long n_steps, int dims);
    NoisePath(std::vector<double> samples, long n_steps, int dims);

    long n_steps() const { return n_steps_; }
    int dims() const { return dims_; }
    double at(long step, int comp) const {
        return samples_[static_cast<std::size_t>(step) * dims_ + comp];
    }
    double& at(long step, int comp) {
        return samples_[static_cast<std::size_t>(step) * dims_ + comp];
    }
    const std::vector<double>& samples() const { return samples_; }

private:
    std::vector<double> samples_;
    long n_steps_;
    int dims_;
};

struct EnsembleStats {
    long n_traj = 0;
    double mean_dgamma = 0.0;   ///< sample mean of Delta gamma
    double m2_dgamma = 0.0;     ///< sample second moment (about zero)
    double var_dgamma = 0.0;    ///< sample variance (about the mean)
    double se_mean = 0.0;
    double se_m2 = 0.0;         ///< jackknife over the trajectory batches
    int n_batches = 0;
};

enum class SweepAxis { k, T, D };

struct SweepPoint {
    double value;
    EnsembleStats stats;
    double prediction;  ///< analytic 2 D k^2 / T at this point
};

struct SweepResult {
    SweepAxis axis;
    std::vector<SweepPoint> points;
    double slope = 0.0;           ///< least-squares slope of log m2 vs log value
    double expected_slope = 0.0;  ///< +2 for k, -1 for T, +1 for D
};

/// Deterministic noise realization for one trajectory index.
NoisePath sample_noise_path(const NoiseConfig& config, std::uint64_t trajectory_index);

/// Linearized phase shift (k/T) * sum_j (b0_dir . N_j) * dt (left-point rule).
/// b0_dir must be a unit vector of length config.dims().
double delta_gamma_linear(double k, std::span<const double> b0_dir,
                          const NoisePath& path, const NoiseConfig& config);

/// Pre-linearization phase shift (k/T) * sum_j (|b0 + N_j| - |b0|) * dt.
double delta_gamma_exact(double k, std::span<const double> b0,
                         const NoisePath& path, const NoiseConfig& config);

/// Runs n_traj independent trajectories and aggregates Delta gamma moments.
/// Deterministic function of (inputs, master_seed): trajectories live in
/// fixed index batches, each batch is reduced serially in index order, and
/// batch partials are combined in batch order, so any worker count yields
/// bit-identical results. n_threads = 0 picks a hardware default.
EnsembleStats ensemble_moments(double k, std::span<const double> b0,
                               const NoiseConfig& config, long n_traj,
                               bool use_exact = false, int n_threads = 0);

/// Sweeps one axis, holding the rest of (k, b0, config) fixed, and fits the
/// log-log slope of the second moment. Each sweep point draws a fresh
/// substream family derived from (master_seed, point index).
SweepResult scaling_sweep(SweepAxis axis, std::span<const double> values,
                          double k, std::span<const double> b0,
                          const NoiseConfig& config, long n_traj,
                          int n_threads = 0);

/// Full noisy Dirac phase along a cyclic path, routed through the
/// phase-core quadrature with beta(t_j) = |b0 + N_j| / (2*pi), minus the
/// noiseless phase. The Burgers vector points along noise component 0 with
/// magnitude defect.b0(). beta is extended periodically (beta(T) = beta(0)),
/// so the full-period trapezoid reproduces the left-point noise integral.
/// The angular path must be cyclic with n_steps + 1 samples.
double noisy_phase_trajectory(double k, const ScrewDefect& defect,
                              const NoisePath& path, const NoiseConfig& config,
                              const AngularPath& angular);

}  // namespace screwphase
