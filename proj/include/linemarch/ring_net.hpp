#pragma once
/**
 * @file ring_net.hpp
 * @brief Decentralized execution of one assignment round over a simulated
 * token ring.
 *
 * Each RingAgent only knows its own state, the obstacles it senses and
 * whatever arrives in the circulating RingMessage. A round is two laps in
 * ascending label order: a sharing lap in which every agent stamps its
 * measured position and failure flag, then a decision lap of exactly N slices
 * in which each agent picks its leader (or head role) against the message
 * contents and forwards its claim. The aggregate result equals
 * assign_and_command() on the same snapshot, bit for bit.
 */

#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "linemarch/assignment.hpp"

namespace linemarch {

struct RingMessage {
    int sender = 0;
    std::map<int, RobotState> positions_known;  // label -> shared snapshot
    std::set<int> claimed_followers;            // labels that already have a follower
    std::set<int> failed_set;
    bool head_seen = false;                     // a smaller-label head exists
};

struct AgentDecision {
    bool head = false;
    std::optional<int> leader;
    Vec2 command;
};

class RingAgent {
public:
    explicit RingAgent(RobotState self) : self_(std::move(self)) {}

    int label() const { return self_.label; }
    const RobotState& state() const { return self_; }

    /// Local measurement update before the round.
    void observe(const RobotState& measured) { self_ = measured; }

    /// A non-responsive agent skips its slice and aborts the round.
    void set_responsive(bool r) { responsive_ = r; }
    bool responsive() const { return responsive_; }

    void share(RingMessage& msg) const;
    void decide(RingMessage& msg, std::span<const ObstacleState> sensed_obstacles,
                const MarchSpec& march, const ControlGains& gains, double t, bool co_head_rule);

    const AgentDecision& decision() const { return decision_; }

private:
    RobotState self_;
    bool responsive_ = true;
    AgentDecision decision_;
};

struct RingRoundResult {
    std::optional<RoundResult> result;  // empty when the round was aborted
    std::optional<int> missing_slice;   // label of the silent agent
    std::size_t decision_slices = 0;
    std::size_t max_message_entries = 0;
};

/// Agents must be ordered by ascending label.
RingRoundResult ring_round(std::span<RingAgent> agents,
                           std::span<const ObstacleState> obstacles, const MarchSpec& march,
                           const ControlGains& gains, double t, bool co_head_rule);

}  // namespace linemarch
