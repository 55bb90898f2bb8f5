#include "doctest.h"

#include <sstream>

#include "linemarch/metrics.hpp"
#include "linemarch/simulator.hpp"

using namespace linemarch;

namespace {

std::string csv_of(const TrajectoryLog& log) {
    std::ostringstream out;
    write_trajectory_csv(log, out);
    return out.str();
}

}  // namespace

TEST_CASE("zero-duration run logs only the initial state") {
    Scenario s = case_a();
    s.sim.duration = 0.0;
    const TrajectoryLog log = run_scenario(s);
    CHECK(log.steps() == 1);
    CHECK(log.records.size() == s.robots.size());
    for (std::size_t i = 0; i < s.robots.size(); ++i) {
        CHECK(log.records[i].t == 0.0);
        CHECK(log.records[i].p == s.robots[i].p);
    }
}

TEST_CASE("records are ordered by time then label") {
    Scenario s = case_a();
    s.sim.duration = 0.01;
    const TrajectoryLog log = run_scenario(s);
    CHECK(log.steps() == 11);
    for (std::size_t n = 1; n < log.records.size(); ++n) {
        const LogRecord& a = log.records[n - 1];
        const LogRecord& b = log.records[n];
        CHECK((a.t < b.t || (a.t == b.t && a.robot < b.robot)));
    }
}

TEST_CASE("same seed reproduces the run, a different seed does not") {
    Scenario s = case_a();
    s.sim.duration = 0.3;
    s.sim.noise_std = 0.05;
    s.sim.rng_seed = 7;
    const std::string a = csv_of(run_scenario(s));
    CHECK(a == csv_of(run_scenario(s)));
    s.sim.rng_seed = 8;
    CHECK(a != csv_of(run_scenario(s)));
}

TEST_CASE("noise reaches the controller only") {
    Scenario s = case_a();
    s.sim.duration = 0.0;
    s.sim.noise_std = 0.1;
    std::vector<Vec2> seen;
    const TrajectoryLog log = run_scenario(s, [&](double, std::span<const RobotState> measured, const RoundResult&) {
        for (const RobotState& r : measured) seen.push_back(r.p);
    });
    for (std::size_t i = 0; i < s.robots.size(); ++i) {
        CHECK(log.records[i].p == s.robots[i].p);
        CHECK(seen[i] != s.robots[i].p);
        CHECK((seen[i] - s.robots[i].p).norm() < 1.0);
    }
}

TEST_CASE("continuous mode with dt_internal = T equals discrete mode") {
    Scenario s = case_a();
    s.sim.duration = 0.5;
    s.sim.model = PlantModel::continuous;
    const std::string cont = csv_of(run_scenario(s));
    s.sim.model = PlantModel::discrete;
    CHECK(cont == csv_of(run_scenario(s)));
}

TEST_CASE("failure window: zero command, never a leader, still an obstacle") {
    Scenario s = case_b(ControllerKind::dynamic, true);
    s.sim.duration = 3.0;
    s.failures = {{4, 1.0, 2.0}};
    const TrajectoryLog log = run_scenario(s);
    for (std::size_t k = 0; k < log.steps(); ++k) {
        const LogRecord* rec = log.step(k);
        const bool failing = k >= 1000 && k < 2000;
        CHECK(rec[3].failed == failing);
        if (failing) {
            CHECK(rec[3].v == Vec2{});
            CHECK_FALSE(rec[3].head);
            for (std::size_t i = 0; i < log.robot_count; ++i) CHECK(rec[i].leader != 4);
        }
        CHECK(*log.margins[k].robot_robot >= 0.0);
    }
    CHECK(log.step(1999)[3].p == log.step(1000)[3].p);
    CHECK(log.step(2000)[3].v != Vec2{});
}

TEST_CASE("unicycle inputs respect saturation and wheel speeds are consistent") {
    Scenario s = unicycle_four_phase();
    s.sim.duration = 20.0;
    const TrajectoryLog log = run_scenario(s);
    for (const LogRecord& r : log.records) {
        REQUIRE(r.upsilon.has_value());
        CHECK(std::abs(*r.upsilon) <= 1.0);
        CHECK(std::abs(*r.varpi) <= 2.0);
        CHECK((*r.wl + *r.wr) / 2 == doctest::Approx(*r.upsilon));
    }
    // Logged position is the offset point of the initial pose.
    CHECK(log.records[0].p == Vec2{-4 + 0.2, 8});
}

TEST_CASE("case A keeps both safety constraints") {
    const Scenario s = case_a();
    const TrajectoryLog log = run_scenario(s);
    const MetricsReport r = compute_metrics(log, s);
    CHECK(*r.worst_robot_robot_margin >= 0.0);
    CHECK(*r.worst_robot_obstacle_margin >= 0.0);
    CHECK(r.convergence_time.has_value());
}
