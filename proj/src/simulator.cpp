#include "linemarch/simulator.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "linemarch/baselines.hpp"
#include "linemarch/metrics.hpp"
#include "linemarch/plant.hpp"
#include "linemarch/ring_net.hpp"

namespace linemarch {

namespace {

/// Box-Muller over mt19937_64 so the noise stream is identical on every
/// standard library (std::normal_distribution is implementation-defined).
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

    double operator()() {
        if (spare_) {
            const double v = *spare_;
            spare_.reset();
            return v;
        }
        double u1 = 0.0;
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
        return r * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

std::int64_t to_step(double t, double T) { return std::llround(t / T); }

}  // namespace

bool failed_at(const Scenario& s, int label, std::int64_t k) {
    for (const FailureEvent& f : s.failures) {
        if (f.robot != label) continue;
        if (k >= to_step(f.t_fail, s.sim.T) && (!f.t_recover || k < to_step(*f.t_recover, s.sim.T)))
            return true;
    }
    return false;
}

TrajectoryLog run_scenario(const Scenario& s, const RoundObserver& observer) {
    const bool unicycle = s.sim.model == PlantModel::unicycle;
    const std::size_t n = s.robots.size();
    const std::int64_t steps = s.sim.steps();
    const double T = s.sim.T;

    Robots robots = s.robots;
    if (unicycle)
        for (RobotState& r : robots) {
            r.body = r.p;
            r.heading = wrap_angle(r.heading);
            r.p = offset_point(r.body, r.heading, r.offset_d);
        }
    Obstacles obstacles = s.obstacles;

    std::vector<int> fixed_order = s.fixed_order;
    if (fixed_order.empty())
        for (std::size_t i = 0; i < n; ++i) fixed_order.push_back(static_cast<int>(i) + 1);
    Vec2 virtual_leader = robots.front().p;

    std::vector<RingAgent> agents;
    if (s.execution == Execution::ring)
        for (const RobotState& r : robots) agents.emplace_back(r);

    GaussianSource noise(s.sim.rng_seed);
    std::vector<Vec2> held(n);

    TrajectoryLog log;
    log.robot_count = n;
    log.obstacle_count = obstacles.size();
    log.records.reserve(n * static_cast<std::size_t>(steps + 1));
    log.obstacles.reserve(obstacles.size() * static_cast<std::size_t>(steps + 1));
    log.margins.reserve(static_cast<std::size_t>(steps + 1));

    for (std::int64_t k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * T;
        for (RobotState& r : robots) r.failed = failed_at(s, r.label, k);

        Robots measured = robots;
        if (s.sim.noise_std > 0.0)
            for (RobotState& r : measured) {
                const double nx = noise();
                const double ny = noise();
                r.p += Vec2{nx, ny} * s.sim.noise_std;
            }

        RoundResult round;
        switch (s.controller) {
            case ControllerKind::dynamic:
                if (s.execution == Execution::ring) {
                    for (std::size_t i = 0; i < n; ++i) {
                        agents[i].observe(measured[i]);
                        bool responsive = true;
                        for (const SliceFault& f : s.ring_faults)
                            if (f.robot == robots[i].label && k >= to_step(f.t_start, T) &&
                                k < to_step(f.t_end, T))
                                responsive = false;
                        agents[i].set_responsive(responsive);
                    }
                    RingRoundResult rr = ring_round(agents, obstacles, s.march, s.gains, t, s.co_head_rule);
                    if (rr.result) {
                        round = std::move(*rr.result);
                    } else {
                        // Aborted round: previous commands are held.
                        round.assignment.head.assign(n, false);
                        round.assignment.has_follower.assign(n, false);
                        round.assignment.has_leader.assign(n, false);
                        round.assignment.leader_of.assign(n, std::nullopt);
                        round.commands = held;
                    }
                } else {
                    round = assign_and_command(measured, obstacles, s.march, s.gains, t, s.co_head_rule);
                }
                break;
            case ControllerKind::virtual_structure:
                round = virtual_structure_command(measured, obstacles, s.march, s.gains, t,
                                                  virtual_leader, s.virtual_structure_ca);
                break;
            case ControllerKind::fixed_chain:
                round = fixed_chain_command(measured, obstacles, s.march, s.gains, t, fixed_order);
                break;
        }
        if (observer) observer(t, measured, round);

        for (std::size_t i = 0; i < n; ++i)
            if (robots[i].failed) round.commands[i] = {};
        held = round.commands;

        std::vector<UnicycleInput> inputs;
        std::vector<Vec2> realized = round.commands;
        if (unicycle) {
            inputs.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                const RobotState& r = robots[i];
                inputs[i] = unicycle_input(round.commands[i], r.heading, r.offset_d, s.sim.v_max, s.sim.w_max);
                realized[i] = offset_jacobian(r.heading, r.offset_d) * Vec2{inputs[i].upsilon, inputs[i].varpi};
            }
        }

        for (std::size_t i = 0; i < n; ++i) {
            LogRecord rec;
            rec.t = t;
            rec.robot = robots[i].label;
            rec.p = robots[i].p;
            rec.v = realized[i];
            rec.leader = round.assignment.leader_of[i];
            rec.head = round.assignment.head[i];
            rec.failed = robots[i].failed;
            if (unicycle) {
                const WheelSpeeds w = wheel_speeds(inputs[i].upsilon, inputs[i].varpi, robots[i].wheelbase);
                rec.upsilon = inputs[i].upsilon;
                rec.varpi = inputs[i].varpi;
                rec.wl = w.left;
                rec.wr = w.right;
            }
            log.records.push_back(rec);
        }
        for (std::size_t j = 0; j < obstacles.size(); ++j)
            log.obstacles.push_back({t, static_cast<int>(j) + 1, obstacles[j].q});
        log.margins.push_back(safety_margins(robots, obstacles));

        if (k == steps) break;

        if (unicycle) {
            for (std::size_t i = 0; i < n; ++i) {
                step_unicycle(robots[i], inputs[i], T);
                robots[i].v = realized[i];
            }
            for (ObstacleState& ob : obstacles) ob.q += ob.u * T;
        } else if (s.sim.model == PlantModel::discrete) {
            step_discrete(robots, realized, obstacles, T);
        } else {
            step_continuous(robots, realized, obstacles, T, s.sim.dt_internal);
        }
        virtual_leader += s.march.v_l * T;
    }
    return log;
}

}  // namespace linemarch
