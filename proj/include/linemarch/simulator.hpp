#pragma once

#include <functional>

#include "linemarch/assignment.hpp"
#include "linemarch/scenario.hpp"
#include "linemarch/trajectory_log.hpp"

namespace linemarch {

/// Called once per control period with the measured snapshot the controller
/// saw and the round it produced (before failure masking). Test hook.
using RoundObserver =
    std::function<void(double t, std::span<const RobotState> measured, const RoundResult& round)>;

/// Runs a validated scenario. Per control period: apply failure events,
/// measure (optionally noisy), decide, log, then advance the plant. The log
/// holds steps()+1 instants, t = 0 included.
TrajectoryLog run_scenario(const Scenario& scenario, const RoundObserver& observer = {});

/// Whether robot `label` is failed at control step k.
bool failed_at(const Scenario& s, int label, std::int64_t k);

}  // namespace linemarch
