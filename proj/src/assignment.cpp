#include "linemarch/assignment.hpp"

#include <stdexcept>

#include "linemarch/control_laws.hpp"

namespace linemarch {

void check_labels(std::span<const RobotState> robots) {
    if (robots.empty()) throw std::invalid_argument("assignment needs at least one robot");
    for (std::size_t k = 1; k < robots.size(); ++k) {
        if (robots[k].label == robots[k - 1].label)
            throw std::invalid_argument("duplicate robot label " + std::to_string(robots[k].label));
        if (robots[k].label < robots[k - 1].label)
            throw std::invalid_argument("robots must be ordered by label");
    }
}

RoundResult assign_and_command(std::span<const RobotState> robots,
                               std::span<const ObstacleState> obstacles, const MarchSpec& march,
                               const ControlGains& gains, double t, bool co_head_rule) {
    check_labels(robots);
    const std::size_t n = robots.size();

    RoundResult out;
    AssignmentState& as = out.assignment;
    as.head.assign(n, true);
    as.has_follower.assign(n, false);
    as.has_leader.assign(n, false);
    as.leader_of.assign(n, std::nullopt);
    out.commands.assign(n, Vec2{});

    bool earlier_head = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (robots[i].failed) {
            // A failed robot is not a head; it only shows up through repulsion.
            as.head[i] = false;
            continue;
        }
        for (std::size_t j = 0; j < n && !as.has_leader[i]; ++j) {
            if (j == i) continue;
            if (inner(robots[j].p - robots[i].p, march.e_l) > 0.0 && !robots[j].failed) {
                as.head[i] = false;
                if (!as.has_follower[j]) {
                    out.commands[i] =
                        pair_tracking_velocity(robots[i].p, robots[j].p, march, gains) +
                        collision_avoidance_velocity(i, robots, obstacles, gains, t);
                    as.has_follower[j] = true;
                    as.has_leader[i] = true;
                    as.leader_of[i] = robots[j].label;
                }
            }
        }
        if (as.head[i]) {
            if (!co_head_rule || !earlier_head)
                out.commands[i] = march.v_l + collision_avoidance_velocity(i, robots, obstacles, gains, t);
            earlier_head = true;
        }
    }
    return out;
}

}  // namespace linemarch
