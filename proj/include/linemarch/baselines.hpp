#pragma once
/**
 * @file baselines.hpp
 * @brief Label-fixed comparison controllers.
 *
 * Both share the collision-avoidance term with the dynamic controller so the
 * only difference is how each robot's target is chosen.
 */

#include <span>
#include <vector>

#include "linemarch/assignment.hpp"

namespace linemarch {

/// Virtual structure: a virtual leader c(t) moves with v_l and the robot at
/// list index k owns the slot c - k*rho*e_l regardless of where it is.
/// Failed robots command zero; their slot stays reserved.
RoundResult virtual_structure_command(std::span<const RobotState> robots,
                                      std::span<const ObstacleState> obstacles,
                                      const MarchSpec& march, const ControlGains& gains, double t,
                                      const Vec2& virtual_leader, bool with_collision_avoidance);

/// Fixed chain: fixed_order[0] leads with v_l, everyone else tracks its fixed
/// predecessor whether or not that predecessor has failed.
RoundResult fixed_chain_command(std::span<const RobotState> robots,
                                std::span<const ObstacleState> obstacles, const MarchSpec& march,
                                const ControlGains& gains, double t,
                                std::span<const int> fixed_order);

}  // namespace linemarch
