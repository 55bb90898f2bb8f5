#pragma once

#include <optional>
#include <vector>

#include "linemarch/geometry.hpp"

namespace linemarch {

/// Desired marching velocity and spacing. Construct through make(); the unit
/// vectors are derived and must stay consistent with v_l.
struct MarchSpec {
    Vec2 v_l;
    double rho = 0.0;
    Vec2 e_l;
    Vec2 e_l_perp;

    /// Throws std::invalid_argument for a zero or non-finite v_l or rho <= 0.
    static MarchSpec make(Vec2 v_l, double rho);
};

struct ControlGains {
    double kappa1 = 1.5;
    double kappa2 = 10.0;
    double amplitude_deg = 10.0;  // perturbation amplitude a_i, degrees
    double omega = 1.0;           // perturbation frequency, rad/s
    double alpha = 10.0;
    double beta = 10.0;

    /// Throws std::invalid_argument naming the first violated bound.
    void validate() const;
};

struct RobotState {
    int label = 0;
    Vec2 p;       // controlled point (body centre, or offset point for unicycles)
    Vec2 v;       // last command
    double delta = 1.0;
    bool failed = false;

    // Unicycle-only fields.
    Vec2 body;            // wheel-axle centre
    double heading = 0.0;
    double wheelbase = 0.16;
    double offset_d = 0.2;

    // Per-robot perturbation overrides; fall back to ControlGains when unset.
    std::optional<double> amplitude_deg;
    std::optional<double> omega;
};

struct ObstacleState {
    Vec2 q;
    Vec2 u;
    double nu = 1.0;
};

using Robots = std::vector<RobotState>;
using Obstacles = std::vector<ObstacleState>;

}  // namespace linemarch
