#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "linemarch/geometry.hpp"

namespace linemarch {

/// One robot at one control instant.
struct LogRecord {
    double t = 0.0;
    int robot = 0;
    Vec2 p;  // controlled point, unperturbed by measurement noise
    Vec2 v;  // velocity of the controlled point over the next period
    std::optional<int> leader;
    bool head = false;
    bool failed = false;
    // Unicycle mode only.
    std::optional<double> upsilon, varpi, wl, wr;

    bool operator==(const LogRecord&) const = default;
};

struct ObstacleRecord {
    double t = 0.0;
    int obstacle = 0;
    Vec2 q;

    bool operator==(const ObstacleRecord&) const = default;
};

/// Worst-case clearances at one instant; absent when there is no pair.
struct StepMargins {
    std::optional<double> robot_robot;
    std::optional<double> robot_obstacle;
};

/// Records are ordered by (t, robot); exactly robot_count per step.
struct TrajectoryLog {
    std::size_t robot_count = 0;
    std::size_t obstacle_count = 0;
    std::vector<LogRecord> records;
    std::vector<ObstacleRecord> obstacles;
    std::vector<StepMargins> margins;

    std::size_t steps() const { return robot_count == 0 ? 0 : records.size() / robot_count; }
    const LogRecord* step(std::size_t k) const { return records.data() + k * robot_count; }
    const ObstacleRecord* obstacle_step(std::size_t k) const {
        return obstacles.data() + k * obstacle_count;
    }
};

inline constexpr const char* kTrajectoryHeader = "t,robot,x,y,vx,vy,leader,head,failed,upsilon,varpi,wl,wr";
inline constexpr const char* kObstacleHeader = "t,obstacle,x,y";

void write_trajectory_csv(const TrajectoryLog& log, std::ostream& out);
void write_obstacle_csv(const TrajectoryLog& log, std::ostream& out);

/// Throws std::runtime_error when the file cannot be written.
void write_log(const TrajectoryLog& log, const std::string& trajectory_path,
               const std::string& obstacle_path = {});

/// Reads the robot records back; obstacles and margins are not restored.
std::vector<LogRecord> read_trajectory_csv(std::istream& in);

/// "%.17g"
std::string format_double(double v);

}  // namespace linemarch
