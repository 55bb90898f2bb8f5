#pragma once
/**
 * @file metrics.hpp
 * @brief Formation and safety measures over a trajectory log.
 *
 * Only non-failed robots enter the formation measures (spacing, lateral
 * spread, velocity error); every robot, failed or not, enters the clearance
 * measures.
 */

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "linemarch/scenario.hpp"
#include "linemarch/trajectory_log.hpp"

namespace linemarch {

inline constexpr double kDefaultTolerance = 0.05;

/// Labels of non-failed robots by ascending projection on e_l, ties by label.
std::vector<int> chain_order(std::span<const RobotState> robots, const MarchSpec& march);

/// min ||p_i - p_j|| - (delta_i + delta_j) and min ||p_i - q_j|| - (delta_i + nu_j).
StepMargins safety_margins(std::span<const RobotState> robots, std::span<const ObstacleState> obstacles);

/// Instantaneous formation measures for one logged step.
struct StepFormation {
    std::vector<int> order;
    std::vector<double> gap_errors;  // |gap - rho| between consecutive robots in order
    double max_gap_error = 0.0;
    double lateral_spread = 0.0;
    double velocity_error = 0.0;
    bool ca_active = false;
    std::optional<double> min_robot_robot;     // centre distance
    std::optional<double> min_robot_obstacle;  // centre distance

    bool within(double tol) const {
        return !order.empty() && max_gap_error <= tol && lateral_spread <= tol && velocity_error <= tol;
    }
};

StepFormation evaluate_step(const TrajectoryLog& log, std::size_t k, const Scenario& s);

struct MetricsReport {
    double tol = kDefaultTolerance;
    std::vector<double> t;
    std::vector<std::vector<double>> spacing_errors;
    std::vector<double> lateral_spread;
    std::vector<double> velocity_error;
    std::vector<std::optional<double>> min_robot_robot;
    std::vector<std::optional<double>> min_robot_obstacle;
    std::vector<bool> ca_active;
    std::optional<double> convergence_time;
    std::vector<int> chain_order;                   // at the final instant
    std::optional<double> worst_robot_robot_margin;  // over the whole run
    std::optional<double> worst_robot_obstacle_margin;
    std::vector<double> stall_time;                 // per robot, seconds spent non-failed and ~stationary
};

MetricsReport compute_metrics(const TrajectoryLog& log, const Scenario& s, double tol = kDefaultTolerance);

/// Earliest t after which every step is either within tol or has collision
/// avoidance active, provided the last step is itself within tol and free of
/// collision avoidance. None otherwise.
std::optional<double> convergence_time(const MetricsReport& partial, double tol);

/// Robots (labels) that are stuck: non-failed at the end, mean speed over the
/// final 20% of the run below 0.01 ||v_l||, and more than rho behind the slot
/// their final rank implies behind the foremost non-failed robot.
std::vector<int> stuck_robots(const TrajectoryLog& log, const Scenario& s);

nlohmann::json to_json(const MetricsReport& m);
void write_metrics(const MetricsReport& m, const std::string& path);

}  // namespace linemarch
