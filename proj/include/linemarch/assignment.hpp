#pragma once
/**
 * @file assignment.hpp
 * @brief One decision round of the dynamic leader-follower line march.
 *
 * Robots are scanned in ascending label order. Robot i scans the others in
 * ascending label order until it has a leader: any non-failed robot strictly
 * ahead along e_l clears i's head flag, and the first such robot that has no
 * follower yet becomes i's leader. Robots left as heads either all march
 * (co_head_rule = false) or only the smallest-label non-failed head marches
 * (co_head_rule = true). Everyone else without a leader holds still, and
 * failed robots always hold still.
 */

#include <optional>
#include <span>
#include <vector>

#include "linemarch/state.hpp"

namespace linemarch {

struct AssignmentState {
    std::vector<bool> head;           // indexed by position in the robot list
    std::vector<bool> has_follower;
    std::vector<bool> has_leader;
    std::vector<std::optional<int>> leader_of;  // leader *label*

    bool operator==(const AssignmentState&) const = default;
};

struct RoundResult {
    AssignmentState assignment;
    std::vector<Vec2> commands;

    bool operator==(const RoundResult&) const = default;
};

/// Throws std::invalid_argument when robots is empty or labels repeat.
/// Robots must be sorted by ascending label.
RoundResult assign_and_command(std::span<const RobotState> robots,
                               std::span<const ObstacleState> obstacles, const MarchSpec& march,
                               const ControlGains& gains, double t, bool co_head_rule);

/// Same checks assign_and_command applies to its input.
void check_labels(std::span<const RobotState> robots);

}  // namespace linemarch
