#include "linemarch/baselines.hpp"

#include <stdexcept>

#include "linemarch/control_laws.hpp"

namespace linemarch {

namespace {

RoundResult empty_result(std::size_t n) {
    RoundResult out;
    out.assignment.head.assign(n, false);
    out.assignment.has_follower.assign(n, false);
    out.assignment.has_leader.assign(n, false);
    out.assignment.leader_of.assign(n, std::nullopt);
    out.commands.assign(n, Vec2{});
    return out;
}

std::size_t index_of(std::span<const RobotState> robots, int label) {
    for (std::size_t k = 0; k < robots.size(); ++k)
        if (robots[k].label == label) return k;
    throw std::invalid_argument("fixed order names unknown robot " + std::to_string(label));
}

}  // namespace

RoundResult virtual_structure_command(std::span<const RobotState> robots,
                                      std::span<const ObstacleState> obstacles,
                                      const MarchSpec& march, const ControlGains& gains, double t,
                                      const Vec2& virtual_leader, bool with_collision_avoidance) {
    check_labels(robots);
    RoundResult out = empty_result(robots.size());
    out.assignment.head[0] = true;
    for (std::size_t i = 0; i < robots.size(); ++i) {
        if (robots[i].failed) continue;
        const Vec2 slot = virtual_leader - march.e_l * (static_cast<double>(i) * march.rho);
        Vec2 cmd = march.v_l + (slot - robots[i].p) * gains.alpha;
        if (with_collision_avoidance)
            cmd += collision_avoidance_velocity(i, robots, obstacles, gains, t);
        out.commands[i] = cmd;
    }
    return out;
}

RoundResult fixed_chain_command(std::span<const RobotState> robots,
                                std::span<const ObstacleState> obstacles, const MarchSpec& march,
                                const ControlGains& gains, double t,
                                std::span<const int> fixed_order) {
    check_labels(robots);
    if (fixed_order.size() != robots.size())
        throw std::invalid_argument("fixed order must list every robot exactly once");
    RoundResult out = empty_result(robots.size());
    AssignmentState& as = out.assignment;
    for (std::size_t k = 0; k < fixed_order.size(); ++k) {
        const std::size_t i = index_of(robots, fixed_order[k]);
        if (k == 0) {
            as.head[i] = true;
        } else {
            const std::size_t j = index_of(robots, fixed_order[k - 1]);
            as.has_leader[i] = true;
            as.leader_of[i] = robots[j].label;
            as.has_follower[j] = true;
        }
        if (robots[i].failed) continue;
        const Vec2 ca = collision_avoidance_velocity(i, robots, obstacles, gains, t);
        if (k == 0) {
            out.commands[i] = march.v_l + ca;
        } else {
            const std::size_t j = index_of(robots, fixed_order[k - 1]);
            out.commands[i] = pair_tracking_velocity(robots[i].p, robots[j].p, march, gains) + ca;
        }
    }
    return out;
}

}  // namespace linemarch
