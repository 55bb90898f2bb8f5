#include "doctest.h"

#include <stdexcept>
#include <algorithm>
#include <numeric>
#include <set>

#include "linemarch/assignment.hpp"
#include "linemarch/control_laws.hpp"
#include "pseudocode_oracle.hpp"
#include "random_snapshots.hpp"

using namespace linemarch;

namespace {

const ControlGains kGains{1.5, 10.0, 10.0, 1.0, 10.0, 10.0};

Robots line3(double delta) {
    Robots rs(3);
    for (int k = 0; k < 3; ++k) {
        rs[k].label = k + 1;
        rs[k].p = {2.0 * k, 0.0};
        rs[k].delta = delta;
    }
    return rs;
}

void check_matches_oracle(const Robots& rs, const Obstacles& obs, const MarchSpec& m, double t, bool co) {
    const RoundResult r = assign_and_command(rs, obs, m, kGains, t, co);
    const oracle::OracleOut o = oracle::line_march_round(rs, obs, m, kGains, t, co);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const int k = static_cast<int>(i) + 1;
        REQUIRE(r.assignment.head[i] == (o.Lambda[k] == 1));
        REQUIRE(r.assignment.has_follower[i] == (o.Delta[k] == 1));
        REQUIRE(r.assignment.has_leader[i] == (o.Phi[k] == 1));
        REQUIRE(r.assignment.leader_of[i].value_or(0) == o.leader[k]);
        REQUIRE(r.commands[i] == o.v[k]);
    }
}

}  // namespace

TEST_CASE("hand-traced chain 1 -> 2 -> 3") {
    const MarchSpec m = MarchSpec::make({1, 0}, 4.0);
    const Robots rs = line3(0.5);
    const RoundResult r = assign_and_command(rs, {}, m, kGains, 0.0, true);
    CHECK(r.assignment.head == std::vector<bool>{false, false, true});
    CHECK(r.assignment.leader_of[0] == 2);
    CHECK(r.assignment.leader_of[1] == 3);
    CHECK_FALSE(r.assignment.leader_of[2].has_value());
    CHECK(r.assignment.has_follower == std::vector<bool>{false, true, true});
    CHECK(r.commands[2] == m.v_l);
    CHECK(r.commands[0] == pair_tracking_velocity(rs[0].p, rs[1].p, m, kGains));
    check_matches_oracle(rs, {}, m, 0.0, true);
}

TEST_CASE("failed leader is skipped but still repels") {
    const MarchSpec m = MarchSpec::make({1, 0}, 4.0);
    Robots rs = line3(0.8);  // band 2.4 > 2, so neighbours at 2 m repel
    rs[1].failed = true;
    const RoundResult r = assign_and_command(rs, {}, m, kGains, 0.0, true);
    CHECK(r.assignment.leader_of[0] == 3);
    CHECK_FALSE(r.assignment.leader_of[1].has_value());
    CHECK(r.commands[1] == Vec2{});
    CHECK(r.assignment.head == std::vector<bool>{false, false, true});
    const Vec2 ca = r.commands[0] - pair_tracking_velocity(rs[0].p, rs[2].p, m, kGains);
    CHECK(ca.x < 0.0);
    CHECK(ca == collision_avoidance_velocity(0, rs, {}, kGains, 0.0));
    check_matches_oracle(rs, {}, m, 0.0, true);
}

TEST_CASE("co-head rule lets only the smallest label march") {
    const MarchSpec m = MarchSpec::make({1, 0}, 4.0);
    Robots rs(3);
    rs[0] = {.label = 1, .p = {0, 5}};
    rs[1] = {.label = 2, .p = {0, -5}};
    rs[2] = {.label = 3, .p = {-2, 0}};
    const RoundResult r = assign_and_command(rs, {}, m, kGains, 0.0, true);
    CHECK(r.assignment.head == std::vector<bool>{true, true, false});
    CHECK(r.commands[0] == m.v_l);
    CHECK(r.commands[1] == Vec2{});
    CHECK(r.assignment.leader_of[2] == 1);
    check_matches_oracle(rs, {}, m, 0.0, true);

    const RoundResult free = assign_and_command(rs, {}, m, kGains, 0.0, false);
    CHECK(free.commands[1] == m.v_l);
}

TEST_CASE("single robot and input errors") {
    const MarchSpec m = MarchSpec::make({-8, 12}, 4.0);
    Robots one(1);
    one[0].label = 1;
    const RoundResult r = assign_and_command(one, {}, m, kGains, 0.0, true);
    CHECK(r.assignment.head[0]);
    CHECK(r.commands[0] == m.v_l);

    CHECK_THROWS_AS(assign_and_command(Robots{}, {}, m, kGains, 0.0, true), std::invalid_argument);
    Robots dup = line3(0.5);
    dup[2].label = 2;
    CHECK_THROWS_AS(assign_and_command(dup, {}, m, kGains, 0.0, true), std::invalid_argument);
}

TEST_CASE("leader is first by label, and a robot with every candidate claimed holds still") {
    const MarchSpec m = MarchSpec::make({1, 0}, 4.0);
    Robots rs(3);
    rs[0] = {.label = 1, .p = {0, 0}, .delta = 0.5};
    rs[1] = {.label = 2, .p = {10, 0}, .delta = 0.5};
    rs[2] = {.label = 3, .p = {5, 3}, .delta = 0.5};
    const RoundResult r = assign_and_command(rs, {}, m, kGains, 0.0, true);
    CHECK(r.assignment.leader_of[0] == 2);  // not the nearer robot 3
    CHECK(r.assignment.head == std::vector<bool>{false, true, false});
    CHECK_FALSE(r.assignment.leader_of[2].has_value());
    CHECK(r.commands[2] == Vec2{});
    check_matches_oracle(rs, {}, m, 0.0, true);
}

TEST_CASE("random snapshots satisfy the assignment invariants") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 10000; ++trial) {
        const MarchSpec m = testutil::random_march(rng);
        const Robots rs = testutil::random_swarm(rng, 10, 25.0, 0.2);
        const Obstacles obs = testutil::random_obstacles(rng, trial % 3, 25.0);
        const bool co = trial % 4 != 0;
        const double t = 0.001 * trial;
        const RoundResult r = assign_and_command(rs, obs, m, kGains, t, co);
        const AssignmentState& a = r.assignment;

        std::set<int> leaders;
        bool any_alive = false;
        int marching_heads = 0;
        for (std::size_t i = 0; i < rs.size(); ++i) {
            REQUIRE(a.has_leader[i] == a.leader_of[i].has_value());
            any_alive = any_alive || !rs[i].failed;
            if (rs[i].failed) {
                REQUIRE(r.commands[i] == Vec2{});
                REQUIRE_FALSE(a.head[i]);
                REQUIRE_FALSE(a.has_leader[i]);
                continue;
            }
            bool someone_ahead = false;
            for (const RobotState& o : rs)
                if (!o.failed && inner(o.p - rs[i].p, m.e_l) > 0) someone_ahead = true;
            REQUIRE(a.head[i] == !someone_ahead);

            if (auto l = a.leader_of[i]) {
                const RobotState& leader = rs[static_cast<std::size_t>(*l - 1)];
                REQUIRE(leaders.insert(*l).second);
                REQUIRE_FALSE(leader.failed);
                REQUIRE(inner(leader.p - rs[i].p, m.e_l) > 0);
                REQUIRE(a.has_follower[static_cast<std::size_t>(*l - 1)]);
            } else if (a.head[i] && r.commands[i] == m.v_l + collision_avoidance_velocity(i, rs, obs, kGains, t)) {
                ++marching_heads;
            } else {
                REQUIRE(r.commands[i] == Vec2{});
            }
        }
        for (std::size_t i = 0; i < rs.size(); ++i)
            REQUIRE(a.has_follower[i] == leaders.contains(rs[i].label));

        // Leader chains terminate: walking leader_of never revisits a robot.
        for (std::size_t i = 0; i < rs.size(); ++i) {
            std::optional<int> cur = rs[i].label;
            int hops = 0;
            while (cur && hops <= 10) {
                cur = a.leader_of[static_cast<std::size_t>(*cur - 1)];
                ++hops;
            }
            REQUIRE(hops <= 10);
        }

        if (co && any_alive) REQUIRE(marching_heads == 1);
        if (trial % 10 == 0) check_matches_oracle(rs, obs, m, t, co);
    }
}

TEST_CASE("deterministic and consistent under relabelling") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 3 + trial % 3;
        const MarchSpec m = testutil::random_march(rng);
        const Robots base = testutil::random_swarm(rng, n, 10.0, 0.0);
        CHECK(assign_and_command(base, {}, m, kGains, 0.5, true) ==
              assign_and_command(base, {}, m, kGains, 0.5, true));

        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::optional<std::multiset<std::pair<double, double>>> head_spots;
        do {
            Robots rs = base;
            for (int k = 0; k < n; ++k) rs[static_cast<std::size_t>(k)].p = base[static_cast<std::size_t>(perm[k])].p;
            check_matches_oracle(rs, {}, m, 0.5, true);
            const RoundResult r = assign_and_command(rs, {}, m, kGains, 0.5, true);
            std::multiset<std::pair<double, double>> spots;
            for (int k = 0; k < n; ++k)
                if (r.assignment.head[static_cast<std::size_t>(k)])
                    spots.insert({rs[static_cast<std::size_t>(k)].p.x, rs[static_cast<std::size_t>(k)].p.y});
            if (!head_spots) head_spots = spots;
            REQUIRE(spots == *head_spots);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}
