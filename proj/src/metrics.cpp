#include "linemarch/metrics.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "linemarch/control_laws.hpp"

namespace linemarch {

std::vector<int> chain_order(std::span<const RobotState> robots, const MarchSpec& march) {
    std::vector<const RobotState*> alive;
    for (const RobotState& r : robots)
        if (!r.failed) alive.push_back(&r);
    std::stable_sort(alive.begin(), alive.end(), [&](const RobotState* a, const RobotState* b) {
        const double pa = inner(a->p, march.e_l);
        const double pb = inner(b->p, march.e_l);
        if (pa != pb) return pa < pb;
        return a->label < b->label;
    });
    std::vector<int> out;
    out.reserve(alive.size());
    for (const RobotState* r : alive) out.push_back(r->label);
    return out;
}

StepMargins safety_margins(std::span<const RobotState> robots, std::span<const ObstacleState> obstacles) {
    StepMargins m;
    for (std::size_t i = 0; i < robots.size(); ++i) {
        for (std::size_t j = i + 1; j < robots.size(); ++j) {
            const double g = distance(robots[i].p, robots[j].p) - (robots[i].delta + robots[j].delta);
            m.robot_robot = m.robot_robot ? std::min(*m.robot_robot, g) : g;
        }
        for (const ObstacleState& o : obstacles) {
            const double g = distance(robots[i].p, o.q) - (robots[i].delta + o.nu);
            m.robot_obstacle = m.robot_obstacle ? std::min(*m.robot_obstacle, g) : g;
        }
    }
    return m;
}

namespace {

Robots robots_at_step(const TrajectoryLog& log, std::size_t k, const Scenario& s) {
    Robots robots(log.robot_count);
    const LogRecord* rec = log.step(k);
    for (std::size_t i = 0; i < log.robot_count; ++i) {
        robots[i] = s.robots[i];
        robots[i].p = rec[i].p;
        robots[i].v = rec[i].v;
        robots[i].failed = rec[i].failed;
    }
    return robots;
}

Obstacles obstacles_at_step(const TrajectoryLog& log, std::size_t k, const Scenario& s) {
    Obstacles obs = s.obstacles;
    const ObstacleRecord* rec = log.obstacle_step(k);
    for (std::size_t j = 0; j < log.obstacle_count; ++j) obs[j].q = rec[j].q;
    return obs;
}

void min_into(std::optional<double>& acc, std::optional<double> v) {
    if (v) acc = acc ? std::min(*acc, *v) : *v;
}

}  // namespace

StepFormation evaluate_step(const TrajectoryLog& log, std::size_t k, const Scenario& s) {
    const Robots robots = robots_at_step(log, k, s);
    const Obstacles obstacles = obstacles_at_step(log, k, s);
    const MarchSpec& m = s.march;

    StepFormation f;
    f.order = chain_order(robots, m);
    auto proj = [&](int label) { return inner(robots[static_cast<std::size_t>(label - 1)].p, m.e_l); };
    for (std::size_t g = 0; g + 1 < f.order.size(); ++g) {
        const double e = std::abs(proj(f.order[g + 1]) - proj(f.order[g]) - m.rho);
        f.gap_errors.push_back(e);
        f.max_gap_error = std::max(f.max_gap_error, e);
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < robots.size(); ++i) {
        if (!robots[i].failed) {
            const double l = inner(robots[i].p, m.e_l_perp);
            lo = std::min(lo, l);
            hi = std::max(hi, l);
            f.velocity_error = std::max(f.velocity_error, (robots[i].v - m.v_l).norm());
        }
        if (repulsion_sum(i, robots, obstacles, s.gains) != Vec2{}) f.ca_active = true;
        for (std::size_t j = i + 1; j < robots.size(); ++j)
            min_into(f.min_robot_robot, distance(robots[i].p, robots[j].p));
        for (const ObstacleState& o : obstacles) min_into(f.min_robot_obstacle, distance(robots[i].p, o.q));
    }
    f.lateral_spread = f.order.empty() ? 0.0 : hi - lo;
    return f;
}

std::optional<double> convergence_time(const MetricsReport& r, double tol) {
    const std::size_t n = r.t.size();
    if (n == 0) return std::nullopt;
    auto within = [&](std::size_t k) {
        if (r.velocity_error[k] > tol || r.lateral_spread[k] > tol) return false;
        return std::all_of(r.spacing_errors[k].begin(), r.spacing_errors[k].end(),
                           [&](double e) { return e <= tol; });
    };
    if (r.ca_active[n - 1] || !within(n - 1)) return std::nullopt;
    std::size_t first = n - 1;
    while (first > 0 && (r.ca_active[first - 1] || within(first - 1))) --first;
    // Don't start the converged stretch inside an excluded interval.
    while (first < n - 1 && r.ca_active[first]) ++first;
    return r.t[first];
}

MetricsReport compute_metrics(const TrajectoryLog& log, const Scenario& s, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    MetricsReport r;
    r.tol = tol;
    const std::size_t steps = log.steps();
    r.stall_time.assign(log.robot_count, 0.0);
    const double stall_speed = 0.01 * s.march.v_l.norm();
    for (std::size_t k = 0; k < steps; ++k) {
        const StepFormation f = evaluate_step(log, k, s);
        r.t.push_back(log.step(k)[0].t);
        r.spacing_errors.push_back(f.gap_errors);
        r.lateral_spread.push_back(f.lateral_spread);
        r.velocity_error.push_back(f.order.empty() ? std::numeric_limits<double>::infinity()
                                                   : f.velocity_error);
        r.min_robot_robot.push_back(f.min_robot_robot);
        r.min_robot_obstacle.push_back(f.min_robot_obstacle);
        r.ca_active.push_back(f.ca_active);
        min_into(r.worst_robot_robot_margin, log.margins[k].robot_robot);
        min_into(r.worst_robot_obstacle_margin, log.margins[k].robot_obstacle);
        if (k + 1 < steps) {
            const LogRecord* rec = log.step(k);
            for (std::size_t i = 0; i < log.robot_count; ++i)
                if (!rec[i].failed && rec[i].v.norm() < stall_speed) r.stall_time[i] += s.sim.T;
        }
        if (k + 1 == steps) r.chain_order = f.order;
    }
    r.convergence_time = convergence_time(r, tol);
    return r;
}

std::vector<int> stuck_robots(const TrajectoryLog& log, const Scenario& s) {
    const std::size_t steps = log.steps();
    if (steps == 0) return {};
    const std::size_t last = steps - 1;
    const std::size_t from = static_cast<std::size_t>(0.8 * static_cast<double>(last));
    const double threshold = 0.01 * s.march.v_l.norm();
    const LogRecord* fin = log.step(last);

    Robots robots(log.robot_count);
    for (std::size_t i = 0; i < log.robot_count; ++i) {
        robots[i].label = fin[i].robot;
        robots[i].p = fin[i].p;
        robots[i].failed = fin[i].failed;
    }
    const std::vector<int> order = chain_order(robots, s.march);
    if (order.empty()) return {};
    const double front = inner(robots[static_cast<std::size_t>(order.back() - 1)].p, s.march.e_l);

    std::vector<int> stuck;
    for (std::size_t idx = 0; idx < order.size(); ++idx) {
        const auto i = static_cast<std::size_t>(order[idx] - 1);
        double speed = 0.0;
        for (std::size_t k = from; k <= last; ++k) speed += log.step(k)[i].v.norm();
        speed /= static_cast<double>(last - from + 1);
        const double rank = static_cast<double>(order.size() - 1 - idx);
        const double slot = front - rank * s.march.rho;
        if (speed < threshold && inner(robots[i].p, s.march.e_l) < slot - s.march.rho)
            stuck.push_back(order[idx]);
    }
    std::sort(stuck.begin(), stuck.end());
    return stuck;
}

nlohmann::json to_json(const MetricsReport& m) {
    using nlohmann::json;
    auto opt_series = [](const std::vector<std::optional<double>>& v) {
        json a = json::array();
        for (const auto& x : v) a.push_back(x ? json(*x) : json(nullptr));
        return a;
    };
    auto opt = [](const std::optional<double>& x) { return x ? json(*x) : json(nullptr); };
    json j;
    j["tol"] = m.tol;
    j["t"] = m.t;
    j["spacing_errors"] = m.spacing_errors;
    j["lateral_spread"] = m.lateral_spread;
    json ve = json::array();
    for (double v : m.velocity_error) ve.push_back(std::isfinite(v) ? json(v) : json(nullptr));
    j["velocity_error"] = ve;
    j["min_robot_robot"] = opt_series(m.min_robot_robot);
    j["min_robot_obstacle"] = opt_series(m.min_robot_obstacle);
    j["ca_active"] = m.ca_active;
    j["convergence_time"] = m.convergence_time ? json(*m.convergence_time) : json("none");
    j["chain_order"] = m.chain_order;
    j["worst_robot_robot_margin"] = opt(m.worst_robot_robot_margin);
    j["worst_robot_obstacle_margin"] = opt(m.worst_robot_obstacle_margin);
    j["stall_time"] = m.stall_time;
    return j;
}

void write_metrics(const MetricsReport& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_json(m).dump() << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace linemarch
