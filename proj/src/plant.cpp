#include "linemarch/plant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace linemarch {

Mat2 offset_jacobian(double heading, double d) {
    const double c = std::cos(heading);
    const double s = std::sin(heading);
    return {c, -d * s, s, d * c};
}

Mat2 offset_jacobian_inverse(double heading, double d) {
    const double c = std::cos(heading);
    const double s = std::sin(heading);
    return {c, s, -s / d, c / d};
}

Vec2 offset_point(const Vec2& p, double heading, double d) {
    return {p.x + d * std::cos(heading), p.y + d * std::sin(heading)};
}

WheelSpeeds wheel_speeds(double upsilon, double varpi, double wheelbase) {
    return {upsilon - 0.5 * wheelbase * varpi, upsilon + 0.5 * wheelbase * varpi};
}

UnicycleInput unicycle_input(const Vec2& vbar, double heading, double d, double v_max, double w_max) {
    const Vec2 raw = offset_jacobian_inverse(heading, d) * vbar;
    return {std::clamp(raw.x, -v_max, v_max), std::clamp(raw.y, -w_max, w_max)};
}

double wrap_angle(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    a = std::remainder(a, two_pi);
    if (a <= -std::numbers::pi) a += two_pi;
    return a;
}

void step_discrete(std::span<RobotState> robots, std::span<const Vec2> commands,
                   std::span<ObstacleState> obstacles, double T) {
    for (std::size_t i = 0; i < robots.size(); ++i) {
        robots[i].v = commands[i];
        robots[i].p += commands[i] * T;
    }
    for (ObstacleState& ob : obstacles) ob.q += ob.u * T;
}

void step_continuous(std::span<RobotState> robots, std::span<const Vec2> commands,
                     std::span<ObstacleState> obstacles, double T, double dt_internal) {
    const auto substeps = static_cast<long>(std::max(1.0, std::ceil(T / dt_internal - 1e-9)));
    const double h = T / static_cast<double>(substeps);
    for (long s = 0; s < substeps; ++s) step_discrete(robots, commands, obstacles, h);
}

void step_unicycle(RobotState& robot, const UnicycleInput& in, double T) {
    robot.body += Vec2{std::cos(robot.heading), std::sin(robot.heading)} * (in.upsilon * T);
    robot.heading = wrap_angle(robot.heading + in.varpi * T);
    robot.p = offset_point(robot.body, robot.heading, robot.offset_d);
}

}  // namespace linemarch
