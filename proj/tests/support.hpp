#pragma once

#include <cmath>
#include <random>

#include <doctest.h>

#include "relcoll/kinematics.hpp"
#include "relcoll/verify.hpp"

namespace relcoll::testing {

inline PhysicsConfig config(int dimension, double c = 1.0)
{
    PhysicsConfig cfg;
    cfg.dimension = dimension;
    cfg.light_speed = c;
    return cfg;
}

inline double rel_diff(double a, double b)
{
    double const scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline double max_abs(FourMomentum const& a, FourMomentum const& b)
{
    return std::max(std::abs(a.energy - b.energy), (a.spatial - b.spatial).cwiseAbs().maxCoeff());
}

/// Random on-shell pair with |p|, |q| <= bound.
struct PairSampler {
    std::mt19937_64 engine;
    PhysicsConfig cfg;
    double bound;

    PairSampler(PhysicsConfig c, double b, std::uint64_t seed = 2024)
        : engine(seed), cfg(c), bound(b)
    {
    }

    FourMomentum momentum() { return lift(random_momentum(engine, cfg.dimension, bound), cfg); }
    Momentum unit() { return random_unit(engine, cfg.dimension); }
};

}  // namespace relcoll::testing
