#include "screwphase/noise.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "screwphase/rng.hpp"

namespace screwphase {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

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

double norm(std::span<const double> v) {
    double q = 0.0;
    for (double x : v) q += x * x;
    return std::sqrt(q);
}

void fill_noise(const NoiseConfig& config, std::uint64_t trajectory_index,
                NoisePath& path) {
    GaussianStream gauss(config.master_seed(), trajectory_index);
    const double sigma = config.step_sigma();
    const long n = config.n_steps();
    const int dims = config.dims();
    for (long j = 0; j < n; ++j)
        for (int c = 0; c < dims; ++c) path.at(j, c) = sigma * gauss.next();
}

struct BatchSums {
    double sum = 0.0;    // sum of Delta gamma
    double sum2 = 0.0;   // sum of Delta gamma^2
    long count = 0;
};

/// Trajectory batches: batch b covers indices [b*n/B, (b+1)*n/B). The batch
/// structure depends only on (n_traj, n_batches), never on scheduling.
long batch_begin(long n_traj, int n_batches, int b) {
    return (static_cast<long long>(n_traj) * b) / n_batches;
}

EnsembleStats stats_from_batches(const std::vector<BatchSums>& batches) {
    CompensatedSum s, q;
    long n = 0;
    for (const auto& b : batches) {
        s.add(b.sum);
        q.add(b.sum2);
        n += b.count;
    }
    const double total = s.value(), total2 = q.value();

    EnsembleStats st;
    st.n_traj = n;
    st.n_batches = static_cast<int>(batches.size());
    st.mean_dgamma = total / n;
    st.m2_dgamma = total2 / n;
    st.var_dgamma = std::max(0.0, (total2 - total * st.mean_dgamma) / (n - 1));
    st.se_mean = std::sqrt(st.var_dgamma / n);

    // jackknife over batches for the second moment
    const int nb = st.n_batches;
    std::vector<double> theta(nb);
    CompensatedSum tbar;
    for (int b = 0; b < nb; ++b) {
        theta[b] = (total2 - batches[b].sum2) / (n - batches[b].count);
        tbar.add(theta[b]);
    }
    const double mean_theta = tbar.value() / nb;
    CompensatedSum dev;
    for (int b = 0; b < nb; ++b) {
        const double d = theta[b] - mean_theta;
        dev.add(d * d);
    }
    st.se_m2 = nb > 1 ? std::sqrt(dev.value() * (nb - 1) / nb) : 0.0;
    return st;
}

double axis_prediction(double k, double d, double t) { return 2.0 * d * k * k / t; }

}  // namespace

NoiseConfig::NoiseConfig(double D, double dt, double T, int dims,
                         std::uint64_t master_seed)
    : d_(D), dt_(dt), t_(T), dims_(dims), seed_(master_seed) {
    if (!(D >= 0.0)) throw std::invalid_argument("D must be non-negative");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
    if (dims < 1) throw std::invalid_argument("dims must be at least 1");
    n_steps_ = std::lround(T / dt);
    if (n_steps_ < 1 || std::abs(static_cast<double>(n_steps_) * dt - T) > 1e-12)
        throw std::invalid_argument("T must be an integer multiple of dt (n_steps*dt = T to 1e-12)");
}

double NoiseConfig::step_sigma() const { return std::sqrt(2.0 * d_ / dt_); }

NoisePath::NoisePath(long n_steps, int dims)
    : samples_(static_cast<std::size_t>(n_steps) * dims, 0.0),
      n_steps_(n_steps),
      dims_(dims) {}

NoisePath::NoisePath(std::vector<double> samples, long n_steps, int dims)
    : samples_(std::move(samples)), n_steps_(n_steps), dims_(dims) {
    if (samples_.size() != static_cast<std::size_t>(n_steps) * dims)
        throw std::invalid_argument("noise path sample count must equal n_steps*dims");
}

NoisePath sample_noise_path(const NoiseConfig& config, std::uint64_t trajectory_index) {
    NoisePath path(config.n_steps(), config.dims());
    fill_noise(config, trajectory_index, path);
    return path;
}

double delta_gamma_linear(double k, std::span<const double> b0_dir,
                          const NoisePath& path, const NoiseConfig& config) {
    if (static_cast<int>(b0_dir.size()) != path.dims())
        throw std::invalid_argument("b0_dir dimension must match the noise path");
    if (path.n_steps() != config.n_steps() || path.dims() != config.dims())
        throw std::invalid_argument("noise path shape must match the config");
    if (std::abs(norm(b0_dir) - 1.0) > 1e-12)
        throw std::invalid_argument("b0_dir must be a unit vector");

    CompensatedSum acc;
    for (long j = 0; j < path.n_steps(); ++j) {
        double dot = 0.0;
        for (int c = 0; c < path.dims(); ++c) dot += b0_dir[c] * path.at(j, c);
        acc.add(dot);
    }
    return (k / config.T()) * acc.value() * config.dt();
}

double delta_gamma_exact(double k, std::span<const double> b0,
                         const NoisePath& path, const NoiseConfig& config) {
    if (static_cast<int>(b0.size()) != path.dims())
        throw std::invalid_argument("b0 dimension must match the noise path");
    if (path.n_steps() != config.n_steps() || path.dims() != config.dims())
        throw std::invalid_argument("noise path shape must match the config");
    const double b0_mag = norm(b0);
    if (!(b0_mag > 0.0)) throw std::invalid_argument("b0 magnitude must be positive");

    CompensatedSum acc;
    for (long j = 0; j < path.n_steps(); ++j) {
        double q = 0.0;
        for (int c = 0; c < path.dims(); ++c) {
            const double v = b0[c] + path.at(j, c);
            q += v * v;
        }
        acc.add(std::sqrt(q) - b0_mag);
    }
    return (k / config.T()) * acc.value() * config.dt();
}

EnsembleStats ensemble_moments(double k, std::span<const double> b0,
                               const NoiseConfig& config, long n_traj,
                               bool use_exact, int n_threads) {
    if (n_traj < 2) throw std::invalid_argument("n_traj must be at least 2");
    if (static_cast<int>(b0.size()) != config.dims())
        throw std::invalid_argument("b0 dimension must match the noise dims");
    const double b0_mag = norm(b0);
    if (!(b0_mag > 0.0)) throw std::invalid_argument("b0 magnitude must be positive");

    std::vector<double> dir(b0.begin(), b0.end());
    for (double& x : dir) x /= b0_mag;

    const int n_batches = static_cast<int>(std::min<long>(100, n_traj));
    std::vector<BatchSums> batches(n_batches);

    if (n_threads <= 0)
        n_threads = static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::clamp(n_threads, 1, n_batches);

    std::atomic<int> next_batch{0};
    auto worker = [&]() {
        NoisePath scratch(config.n_steps(), config.dims());
        for (;;) {
            const int b = next_batch.fetch_add(1);
            if (b >= n_batches) return;
            const long lo = batch_begin(n_traj, n_batches, b);
            const long hi = batch_begin(n_traj, n_batches, b + 1);
            CompensatedSum s, q;
            for (long i = lo; i < hi; ++i) {
                fill_noise(config, static_cast<std::uint64_t>(i), scratch);
                const double dg = use_exact
                                      ? delta_gamma_exact(k, b0, scratch, config)
                                      : delta_gamma_linear(k, dir, scratch, config);
                s.add(dg);
                q.add(dg * dg);
            }
            batches[b] = {s.value(), q.value(), hi - lo};
        }
    };

    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return stats_from_batches(batches);
}

SweepResult scaling_sweep(SweepAxis axis, std::span<const double> values,
                          double k, std::span<const double> b0,
                          const NoiseConfig& config, long n_traj,
                          int n_threads) {
    if (values.size() < 4)
        throw std::invalid_argument("sweep needs at least 4 values");
    for (double v : values)
        if (!(v > 0.0)) throw std::invalid_argument("sweep values must be positive");

    SweepResult result;
    result.axis = axis;
    result.expected_slope = axis == SweepAxis::k ? 2.0 : (axis == SweepAxis::T ? -1.0 : 1.0);

    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        double kk = k, dd = config.D(), tt = config.T();
        switch (axis) {
            case SweepAxis::k: kk = v; break;
            case SweepAxis::T: tt = v; break;
            case SweepAxis::D: dd = v; break;
        }
        // fresh substream family per sweep point
        const std::uint64_t seed =
            mix64(config.master_seed() ^ mix64(0x5CA1E5EEDULL + i));
        NoiseConfig point_cfg(dd, config.dt(), tt, config.dims(), seed);
        const auto stats = ensemble_moments(kk, b0, point_cfg, n_traj, false, n_threads);
        result.points.push_back({v, stats, axis_prediction(kk, dd, tt)});
    }

    // least-squares slope of log m2 against log value
    const std::size_t n = values.size();
    double sx = 0.0, sy = 0.0;
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(result.points[i].stats.m2_dgamma > 0.0))
            throw std::runtime_error("sweep second moments must be positive for a log-log fit");
        lx[i] = std::log(values[i]);
        ly[i] = std::log(result.points[i].stats.m2_dgamma);
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    result.slope = sxy / sxx;
    return result;
}

double noisy_phase_trajectory(double k, const ScrewDefect& defect,
                              const NoisePath& path, const NoiseConfig& config,
                              const AngularPath& angular) {
    if (path.n_steps() != config.n_steps() || path.dims() != config.dims())
        throw std::invalid_argument("noise path shape must match the config");
    if (!angular.cyclic())
        throw std::invalid_argument("angular path must be cyclic");
    if (angular.n_samples() != static_cast<std::size_t>(config.n_steps()) + 1)
        throw std::invalid_argument("angular path must have n_steps + 1 samples");
    if (!(defect.b0() > 0.0))
        throw std::invalid_argument("b0 magnitude must be positive");

    const long n = path.n_steps();
    std::vector<double> beta(n + 1);
    for (long j = 0; j < n; ++j) {
        double q = 0.0;
        for (int c = 0; c < path.dims(); ++c) {
            const double v = (c == 0 ? defect.b0() : 0.0) + path.at(j, c);
            q += v * v;
        }
        beta[j] = std::sqrt(q) / kTwoPi;
    }
    beta[n] = beta[0];  // periodic extension over the cyclic period

    const double gamma = dirac_phase_quadrature(k, beta, angular).gamma;
    const double gamma0 =
        dirac_phase_closed(k, defect, angular.phi0(), angular.phi0() + kTwoPi).gamma;
    return gamma - gamma0;
}

}  // namespace screwphase
