#include "linemarch/control_laws.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace linemarch {

MarchSpec MarchSpec::make(Vec2 v_l, double rho) {
    if (!v_l.finite() || v_l.norm() < kZeroNorm)
        throw std::invalid_argument("march velocity v_l must be finite and nonzero");
    if (!std::isfinite(rho) || rho <= 0.0)
        throw std::invalid_argument("rho must be positive");
    MarchSpec m;
    m.v_l = v_l;
    m.rho = rho;
    m.e_l = unit(v_l);
    m.e_l_perp = perp(m.e_l);
    return m;
}

void ControlGains::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("invalid gains: ") + what);
    };
    require(std::isfinite(kappa1) && kappa1 > 1.0, "kappa1 must exceed 1");
    require(std::isfinite(kappa2) && kappa2 > 0.0, "kappa2 must be positive");
    require(std::isfinite(amplitude_deg) && amplitude_deg > 0.0, "a must be positive");
    require(std::isfinite(omega) && omega > 0.0, "omega must be positive");
    require(std::isfinite(alpha) && alpha > 0.0, "alpha must be positive");
    require(std::isfinite(beta) && beta > 0.0, "beta must be positive");
}

double zeta(double x, double a, double b, double kappa1, double kappa2) {
    const double contact = a + b;
    if (x > kappa1 * contact) return 0.0;
    if (x <= contact) x = contact + kZetaCapFraction * contact;
    return kappa2 / (x - contact) - kappa2 / ((kappa1 - 1.0) * contact);
}

double perturbation_angle(double t, double amplitude_deg, double omega) {
    return amplitude_deg * (std::numbers::pi / 180.0) * std::sin(omega * t);
}

double perturbation_angle(double t, const ControlGains& gains) {
    return perturbation_angle(t, gains.amplitude_deg, gains.omega);
}

Vec2 repulsion_sum(std::size_t index, std::span<const RobotState> robots,
                   std::span<const ObstacleState> obstacles, const ControlGains& gains) {
    const RobotState& self = robots[index];
    Vec2 sum;
    for (std::size_t j = 0; j < robots.size(); ++j) {
        if (j == index) continue;
        const Vec2 d = self.p - robots[j].p;
        const double z = zeta(d.norm(), self.delta, robots[j].delta, gains.kappa1, gains.kappa2);
        if (z != 0.0) sum += unit(d) * z;
    }
    for (const ObstacleState& ob : obstacles) {
        const Vec2 d = self.p - ob.q;
        const double z = zeta(d.norm(), self.delta, ob.nu, gains.kappa1, gains.kappa2);
        if (z != 0.0) sum += unit(d) * z;
    }
    return sum;
}

Vec2 collision_avoidance_velocity(std::size_t index, std::span<const RobotState> robots,
                                  std::span<const ObstacleState> obstacles,
                                  const ControlGains& gains, double t) {
    const RobotState& self = robots[index];
    const double theta = perturbation_angle(t, self.amplitude_deg.value_or(gains.amplitude_deg),
                                            self.omega.value_or(gains.omega));
    return rotate(theta, repulsion_sum(index, robots, obstacles, gains));
}

Vec2 pair_tracking_velocity(const Vec2& p_follower, const Vec2& p_leader, const MarchSpec& march,
                            const ControlGains& gains) {
    const Vec2 rel = p_leader - p_follower;
    return march.v_l + march.e_l * (gains.alpha * (inner(rel, march.e_l) - march.rho)) +
           march.e_l_perp * (gains.beta * inner(rel, march.e_l_perp));
}

}  // namespace linemarch
