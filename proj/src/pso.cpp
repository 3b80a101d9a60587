#include "locwave/pso.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace locwave {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

ParticleStream::ParticleStream(std::uint64_t seed, std::uint64_t index) {
    // stream i is seeded with output i of SplitMix64(seed)
    std::uint64_t state = seed;
    std::uint64_t s = splitmix64(state);
    for (std::uint64_t k = 0; k < index; ++k) s = splitmix64(state);
    engine_.seed(s);
}

double ParticleStream::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

void PsoConfig::validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); };
    if (swarm_size < 2) fail("pso.swarm_size must be >= 2");
    if (max_iters < 1) fail("pso.max_iters must be >= 1");
    if (!(inertia > 0.0 && inertia < 1.0)) fail("pso.inertia must lie in (0, 1)");
    if (!(cognitive >= 0.0) || !(social >= 0.0)) fail("pso.cognitive and pso.social must be >= 0");
    for (const auto& b : bounds) {
        if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || !(b.hi >= b.lo)) fail("pso bounds must be finite with hi >= lo");
    }
    if (!(bounds[0].lo > 0.0) || !(bounds[1].lo > 0.0)) fail("pso speed bounds must be > 0");
    if (!(bounds[2].lo >= 0.0 && bounds[2].hi <= 1.0)) fail("pso theta bounds must lie in [0, 1]");
    if (!(kappa_min >= 0.0)) fail("pso.kappa_min must be >= 0");
    if (!(distinct_eps >= 0.0)) fail("pso.distinct_eps must be >= 0");
}

namespace {

void evaluate_swarm(const std::vector<Particle>& swarm, const WaveParams& wave,
                    const ObjectiveConstraints& cons, std::vector<double>& values) {
    const auto n = static_cast<std::int64_t>(swarm.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
        values[static_cast<std::size_t>(i)] =
            evaluate_objective(swarm[static_cast<std::size_t>(i)].position, wave, cons).value;
    }
}

}  // namespace

PsoResult pso_minimize(const WaveParams& wave, const PsoConfig& cfg, const PsoOptions& opts) {
    wave.validate();
    cfg.validate();
    const ObjectiveConstraints cons = cfg.constraints();

    std::vector<ParticleStream> streams;
    std::vector<Particle> swarm;
    if (opts.initial_swarm) {
        swarm = *opts.initial_swarm;
        if (swarm.size() < 2) throw Error(ErrorCode::InvalidArgument, "initial swarm needs >= 2 particles");
    } else {
        swarm.resize(static_cast<std::size_t>(cfg.swarm_size));
    }
    streams.reserve(swarm.size());
    for (std::size_t i = 0; i < swarm.size(); ++i) streams.emplace_back(cfg.seed, i);

    if (!opts.initial_swarm) {
        for (std::size_t i = 0; i < swarm.size(); ++i) {
            for (std::size_t d = 0; d < 3; ++d) swarm[i].position[d] = streams[i].uniform(cfg.bounds[d].lo, cfg.bounds[d].hi);
            for (std::size_t d = 0; d < 3; ++d) {
                const double vmax = 0.25 * cfg.bounds[d].width();
                swarm[i].velocity[d] = streams[i].uniform(-vmax, vmax);
            }
        }
    }
    for (const auto& p : swarm) {
        if (!cfg.in_bounds(p.position)) throw Error(ErrorCode::InvalidArgument, "initial particle outside bounds");
    }

    PsoResult res;
    std::vector<double> values(swarm.size());
    bool any_feasible = false;

    auto observe = [&] {
        if (opts.observer) {
            for (const auto& p : swarm) opts.observer(p.position, opts.observer_ctx);
        }
    };

    evaluate_swarm(swarm, wave, cons, values);
    observe();
    res.evaluations += static_cast<std::int64_t>(swarm.size());
    std::size_t gbest = 0;
    for (std::size_t i = 0; i < swarm.size(); ++i) {
        swarm[i].best_position = swarm[i].position;
        swarm[i].best_value = values[i];
        if (values[i] < kSentinel) any_feasible = true;
        if (values[i] < swarm[gbest].best_value) gbest = i;
    }
    Vec3 gpos = swarm[gbest].best_position;
    double gval = swarm[gbest].best_value;
    res.history.push_back(gval);

    for (int it = 1; it <= cfg.max_iters; ++it) {
        for (std::size_t i = 0; i < swarm.size(); ++i) {
            Particle& p = swarm[i];
            Vec3 r1{}, r2{};
            for (auto& r : r1) r = streams[i].uniform();
            for (auto& r : r2) r = streams[i].uniform();
            for (std::size_t d = 0; d < 3; ++d) {
                p.velocity[d] = cfg.inertia * p.velocity[d] +
                                cfg.cognitive * r1[d] * (p.best_position[d] - p.position[d]) +
                                cfg.social * r2[d] * (gpos[d] - p.position[d]);
                p.position[d] += p.velocity[d];
                if (p.position[d] < cfg.bounds[d].lo) {
                    p.position[d] = cfg.bounds[d].lo;
                    p.velocity[d] = 0.0;
                } else if (p.position[d] > cfg.bounds[d].hi) {
                    p.position[d] = cfg.bounds[d].hi;
                    p.velocity[d] = 0.0;
                }
            }
        }

        evaluate_swarm(swarm, wave, cons, values);
        observe();
        res.evaluations += static_cast<std::int64_t>(swarm.size());

        for (std::size_t i = 0; i < swarm.size(); ++i) {
            if (values[i] < kSentinel) any_feasible = true;
            if (values[i] < swarm[i].best_value) {
                swarm[i].best_value = values[i];
                swarm[i].best_position = swarm[i].position;
            }
            if (swarm[i].best_value < gval) {
                gval = swarm[i].best_value;
                gpos = swarm[i].best_position;
            }
        }
        res.history.push_back(gval);
        res.iterations = it;
    }

    if (!any_feasible) {
        throw Error(ErrorCode::NoFeasiblePoint, "no feasible design found: every evaluation returned the sentinel");
    }
    res.best_position = gpos;
    res.best_value = gval;
    return res;
}

}  // namespace locwave
