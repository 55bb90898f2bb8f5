#include "doctest.h"

#include "linemarch/ring_net.hpp"
#include "linemarch/simulator.hpp"
#include "random_snapshots.hpp"

using namespace linemarch;

namespace {

const ControlGains kGains{1.5, 10.0, 10.0, 1.0, 10.0, 10.0};

std::vector<RingAgent> agents_for(const Robots& rs) {
    std::vector<RingAgent> out;
    for (const RobotState& r : rs) out.emplace_back(r);
    return out;
}

}  // namespace

TEST_CASE("ring round matches the centralized chain example") {
    const MarchSpec m = MarchSpec::make({1, 0}, 4.0);
    Robots rs(3);
    for (int k = 0; k < 3; ++k) rs[static_cast<std::size_t>(k)] = {.label = k + 1, .p = {2.0 * k, 0}, .delta = 0.8};
    for (bool fail_middle : {false, true}) {
        rs[1].failed = fail_middle;
        auto agents = agents_for(rs);
        const RingRoundResult rr = ring_round(agents, {}, m, kGains, 0.25, true);
        REQUIRE(rr.result);
        CHECK(*rr.result == assign_and_command(rs, {}, m, kGains, 0.25, true));
        CHECK(rr.decision_slices == 3);
    }
}

TEST_CASE("single agent ring") {
    const MarchSpec m = MarchSpec::make({-8, 12}, 4.0);
    Robots rs(1);
    rs[0].label = 1;
    auto agents = agents_for(rs);
    const RingRoundResult rr = ring_round(agents, {}, m, kGains, 0.0, true);
    REQUIRE(rr.result);
    CHECK(*rr.result == assign_and_command(rs, {}, m, kGains, 0.0, true));
}

TEST_CASE("ring is bit-identical to the centralized round on random snapshots") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 1000; ++trial) {
        const MarchSpec m = testutil::random_march(rng);
        const Robots rs = testutil::random_swarm(rng, 10, 20.0, 0.15);
        const Obstacles obs = testutil::random_obstacles(rng, trial % 2, 20.0);
        const bool co = trial % 3 != 0;
        auto agents = agents_for(rs);
        const RingRoundResult rr = ring_round(agents, obs, m, kGains, 0.01 * trial, co);
        REQUIRE(rr.result);
        REQUIRE(*rr.result == assign_and_command(rs, obs, m, kGains, 0.01 * trial, co));
        REQUIRE(rr.decision_slices == rs.size());
        REQUIRE(rr.max_message_entries <= 2 * rs.size());
    }
}

TEST_CASE("a silent agent aborts the round") {
    const MarchSpec m = MarchSpec::make({1, 0}, 4.0);
    Robots rs(3);
    for (int k = 0; k < 3; ++k) rs[static_cast<std::size_t>(k)] = {.label = k + 1, .p = {2.0 * k, 0}, .delta = 0.5};
    auto agents = agents_for(rs);
    agents[1].set_responsive(false);
    const RingRoundResult rr = ring_round(agents, {}, m, kGains, 0.0, true);
    CHECK_FALSE(rr.result.has_value());
    CHECK(rr.missing_slice == 2);
}

TEST_CASE("aborted rounds hold the previous commands in a run") {
    Scenario s = case_a();
    s.sim.duration = 0.05;
    s.execution = Execution::ring;
    s.ring_faults = {{3, 0.02, 0.03}};
    const TrajectoryLog log = run_scenario(s);
    const std::size_t before = 19, inside = 25;
    for (std::size_t i = 0; i < log.robot_count; ++i) {
        CHECK(log.step(20)[i].v == log.step(before)[i].v);
        CHECK(log.step(inside)[i].v == log.step(before)[i].v);
        CHECK_FALSE(log.step(inside)[i].leader.has_value());
    }
    CHECK(log.step(31)[0].leader.has_value() == log.step(before)[0].leader.has_value());
}
