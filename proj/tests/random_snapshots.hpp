#pragma once

#include <random>

#include "linemarch/state.hpp"

namespace testutil {

using namespace linemarch;

/// N robots scattered in a square, each failed with probability p_fail.
inline Robots random_swarm(std::mt19937_64& rng, int n, double half_width, double p_fail,
                           double delta = 1.0) {
    std::uniform_real_distribution<double> c(-half_width, half_width);
    std::bernoulli_distribution fail(p_fail);
    Robots rs;
    for (int k = 1; k <= n; ++k) {
        RobotState r;
        r.label = k;
        r.p = {c(rng), c(rng)};
        r.delta = delta;
        r.failed = fail(rng);
        rs.push_back(r);
    }
    return rs;
}

inline MarchSpec random_march(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> a(-3.14159, 3.14159);
    std::uniform_real_distribution<double> s(0.5, 15.0);
    const double th = a(rng);
    return MarchSpec::make(Vec2{std::cos(th), std::sin(th)} * s(rng), 4.0);
}

inline Obstacles random_obstacles(std::mt19937_64& rng, int m, double half_width) {
    std::uniform_real_distribution<double> c(-half_width, half_width);
    Obstacles obs;
    for (int k = 0; k < m; ++k) obs.push_back({{c(rng), c(rng)}, {c(rng) * 0.1, 0.0}, 2.0});
    return obs;
}

}  // namespace testutil
