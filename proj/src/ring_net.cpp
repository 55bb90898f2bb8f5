#include "linemarch/ring_net.hpp"

#include <algorithm>

#include "linemarch/control_laws.hpp"

namespace linemarch {

void RingAgent::share(RingMessage& msg) const {
    msg.sender = self_.label;
    msg.positions_known[self_.label] = self_;
    if (self_.failed) msg.failed_set.insert(self_.label);
}

void RingAgent::decide(RingMessage& msg, std::span<const ObstacleState> sensed_obstacles,
                       const MarchSpec& march, const ControlGains& gains, double t,
                       bool co_head_rule) {
    msg.sender = self_.label;
    decision_ = {};
    if (self_.failed) return;

    // Rebuild the swarm view from the message; map order is label order.
    Robots view;
    view.reserve(msg.positions_known.size());
    std::size_t me = 0;
    for (const auto& [label, snap] : msg.positions_known) {
        if (label == self_.label) me = view.size();
        view.push_back(snap);
    }

    bool head = true;
    for (const RobotState& other : view) {
        if (other.label == self_.label) continue;
        if (inner(other.p - self_.p, march.e_l) > 0.0 && !msg.failed_set.contains(other.label)) {
            head = false;
            if (!msg.claimed_followers.contains(other.label)) {
                decision_.command = pair_tracking_velocity(self_.p, other.p, march, gains) +
                                    collision_avoidance_velocity(me, view, sensed_obstacles, gains, t);
                decision_.leader = other.label;
                msg.claimed_followers.insert(other.label);
                break;
            }
        }
    }
    if (head) {
        if (!co_head_rule || !msg.head_seen)
            decision_.command = march.v_l + collision_avoidance_velocity(me, view, sensed_obstacles, gains, t);
        msg.head_seen = true;
    }
    decision_.head = head;
}

RingRoundResult ring_round(std::span<RingAgent> agents,
                           std::span<const ObstacleState> obstacles, const MarchSpec& march,
                           const ControlGains& gains, double t, bool co_head_rule) {
    RingRoundResult out;
    if (agents.empty()) return out;

    RingMessage msg;
    for (const RingAgent& a : agents) {
        if (!a.responsive()) {
            out.missing_slice = a.label();
            return out;
        }
        a.share(msg);
    }
    out.max_message_entries = msg.positions_known.size();

    for (RingAgent& a : agents) {
        if (!a.responsive()) {
            out.missing_slice = a.label();
            return out;
        }
        a.decide(msg, obstacles, march, gains, t, co_head_rule);
        ++out.decision_slices;
        out.max_message_entries = std::max(
            out.max_message_entries,
            std::max(msg.positions_known.size(), msg.claimed_followers.size() + msg.failed_set.size()));
    }

    const std::size_t n = agents.size();
    RoundResult r;
    r.assignment.head.resize(n);
    r.assignment.has_follower.resize(n);
    r.assignment.has_leader.resize(n);
    r.assignment.leader_of.resize(n);
    r.commands.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const AgentDecision& d = agents[i].decision();
        r.assignment.head[i] = d.head;
        r.assignment.has_leader[i] = d.leader.has_value();
        r.assignment.leader_of[i] = d.leader;
        r.assignment.has_follower[i] = msg.claimed_followers.contains(agents[i].label());
        r.commands[i] = d.command;
    }
    out.result = std::move(r);
    return out;
}

}  // namespace linemarch
