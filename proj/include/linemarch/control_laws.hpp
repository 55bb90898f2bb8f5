#pragma once
/**
 * @file control_laws.hpp
 * @brief Velocity building blocks shared by every controller.
 *
 * - zeta(): repulsive magnitude, active inside kappa1 times the combined
 *   safety radii and divergent at the radii themselves (capped here).
 * - repulsion_sum() / collision_avoidance_velocity(): summed repulsion from
 *   other robots (failed ones included) and obstacles, then rotated by a
 *   small sinusoidal angle so force balances do not persist.
 * - pair_tracking_velocity(): drives a follower to the slot rho behind its
 *   leader along the marching direction.
 */

#include <span>

#include "linemarch/state.hpp"

namespace linemarch {

/// Fraction of (a+b) above the contact distance at which zeta is evaluated
/// once the safety distance is violated.
inline constexpr double kZetaCapFraction = 1e-6;

double zeta(double x, double a, double b, double kappa1, double kappa2);

/// a * pi/180 * sin(omega * t).
double perturbation_angle(double t, double amplitude_deg, double omega);
double perturbation_angle(double t, const ControlGains& gains);

/// Unrotated repulsion on robots[index]. Skips the robot itself.
Vec2 repulsion_sum(std::size_t index, std::span<const RobotState> robots,
                   std::span<const ObstacleState> obstacles, const ControlGains& gains);

Vec2 collision_avoidance_velocity(std::size_t index, std::span<const RobotState> robots,
                                  std::span<const ObstacleState> obstacles,
                                  const ControlGains& gains, double t);

Vec2 pair_tracking_velocity(const Vec2& p_follower, const Vec2& p_leader, const MarchSpec& march,
                            const ControlGains& gains);

}  // namespace linemarch
