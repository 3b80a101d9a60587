// Global-best particle swarm over (c_a, c_b, theta) minimizing the
// localization objective at a fixed wave point.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "locwave/objective.hpp"

namespace locwave {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    [[nodiscard]] double width() const { return hi - lo; }
    [[nodiscard]] bool contains(double x) const { return x >= lo && x <= hi; }
};

struct PsoConfig {
    int swarm_size = 40;
    int max_iters = 200;
    double inertia = 0.7;
    double cognitive = 1.5;
    double social = 1.5;
    std::uint64_t seed = 1;
    std::array<Interval, 3> bounds{Interval{0.5, 3.5}, Interval{0.5, 3.5}, Interval{1e-3, 1.0 - 1e-3}};
    double kappa_min = 0.5;
    double distinct_eps = 1e-6;

    void validate() const;

    [[nodiscard]] ObjectiveConstraints constraints() const { return {kappa_min, distinct_eps}; }
    [[nodiscard]] bool in_bounds(const Vec3& p) const {
        return bounds[0].contains(p[0]) && bounds[1].contains(p[1]) && bounds[2].contains(p[2]);
    }
};

struct Particle {
    Vec3 position{};
    Vec3 velocity{};
    Vec3 best_position{};
    double best_value = kSentinel;
};

struct PsoResult {
    Vec3 best_position{};
    double best_value = kSentinel;
    std::vector<double> history;  // [0] = initial swarm, then one per iteration
    std::int64_t evaluations = 0;
    int iterations = 0;
};

/// Per-particle random stream: mt19937_64 seeded from SplitMix64(seed, index).
/// Uniform doubles use the top 53 bits so the sequence is identical on every
/// standard library.
class ParticleStream {
public:
    ParticleStream(std::uint64_t seed, std::uint64_t index);

    double uniform();  // [0, 1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t& state);

/// Optional hook invoked for every evaluated position (used by tests).
using EvalObserver = void (*)(const Vec3&, void*);

struct PsoOptions {
    std::optional<std::vector<Particle>> initial_swarm;  // overrides random init
    EvalObserver observer = nullptr;
    void* observer_ctx = nullptr;
};

/// Throws Error{ErrorCode::NoFeasiblePoint} if every evaluation returned the sentinel.
PsoResult pso_minimize(const WaveParams& wave, const PsoConfig& cfg, const PsoOptions& opts = {});

}  // namespace locwave
