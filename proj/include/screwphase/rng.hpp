// Counter-based random streams: every trajectory owns an independent
// substream derived from (master_seed, trajectory_index) through a
// splitmix-style scrambler, so results never depend on execution order or
// thread count.

#pragma once

#include <cmath>
#include <cstdint>

namespace screwphase {

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Substream seed for one trajectory.
inline std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index) {
    return mix64(master_seed ^ mix64(index + 0x9E3779B97F4A7C15ULL));
}

/// splitmix64 generator.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    /// Uniform in (0, 1] with 53-bit resolution (never 0, safe under log).
    double next_unit() {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

/// Standard normal draws via Box-Muller on a SplitMix64 substream.
class GaussianStream {
public:
    GaussianStream(std::uint64_t master_seed, std::uint64_t trajectory_index)
        : rng_(stream_seed(master_seed, trajectory_index)) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = rng_.next_unit();
        const double u2 = rng_.next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    SplitMix64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace screwphase
