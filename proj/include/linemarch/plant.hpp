#pragma once
/**
 * @file plant.hpp
 * @brief Plant models: single-integrator robots (discrete and zero-order-hold
 * continuous) and unicycles driven through an offset point.
 *
 * For a unicycle at body position p with heading th, the point
 * pbar = p + d (cos th, sin th) obeys pbar' = Theta(th) (upsilon, varpi)^T with
 *
 *     Theta = | cos th   -d sin th |      Theta^-1 = |  cos th     sin th   |
 *             | sin th    d cos th |                 | -sin th/d  cos th/d  |
 *
 * so any planar velocity command for pbar maps back to (upsilon, varpi).
 */

#include <span>

#include "linemarch/state.hpp"

namespace linemarch {

struct Mat2 {
    double a11, a12, a21, a22;

    Vec2 operator*(const Vec2& v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }
    Mat2 operator*(const Mat2& m) const {
        return {a11 * m.a11 + a12 * m.a21, a11 * m.a12 + a12 * m.a22,
                a21 * m.a11 + a22 * m.a21, a21 * m.a12 + a22 * m.a22};
    }
    double det() const { return a11 * a22 - a12 * a21; }
};

Mat2 offset_jacobian(double heading, double d);
Mat2 offset_jacobian_inverse(double heading, double d);

Vec2 offset_point(const Vec2& p, double heading, double d);

struct WheelSpeeds {
    double left;
    double right;
};

WheelSpeeds wheel_speeds(double upsilon, double varpi, double wheelbase);

struct UnicycleInput {
    double upsilon = 0.0;
    double varpi = 0.0;
};

/// Theta^-1 vbar, then each component clamped to its own limit.
UnicycleInput unicycle_input(const Vec2& vbar, double heading, double d, double v_max, double w_max);

/// Wraps into (-pi, pi].
double wrap_angle(double a);

/// p += T v for every robot, q += T u for every obstacle.
void step_discrete(std::span<RobotState> robots, std::span<const Vec2> commands,
                   std::span<ObstacleState> obstacles, double T);

/// Zero-order hold over one control period T, explicit Euler sub-steps no
/// longer than dt_internal. Identical to step_discrete when dt_internal >= T.
void step_continuous(std::span<RobotState> robots, std::span<const Vec2> commands,
                     std::span<ObstacleState> obstacles, double T, double dt_internal);

/// Advances one unicycle for T seconds under the given (already saturated)
/// input and refreshes its offset point.
void step_unicycle(RobotState& robot, const UnicycleInput& in, double T);

}  // namespace linemarch
