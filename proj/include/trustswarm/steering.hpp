#pragma once
// Per-agent steering and trust rules. Everything here is a pure function of
// its arguments; the simulation loop lives in engine.hpp.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include "trustswarm/vec2.hpp"

namespace trustswarm {

/// Rectangular world [0,width] x [0,length].
struct WorldBounds {
    double width{500.0};
    double length{500.0};

    constexpr bool contains(const Vec2& p) const {
        return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= length;
    }

    void validate() const {
        if (!(width > 0.0) || !(length > 0.0)) {
            throw std::invalid_argument("world bounds must have positive width and length");
        }
    }
};

struct SteeringWeights {
    double cohesion{0.4};
    double alignment{0.4};
    double separation{0.2};

    void validate() const {
        auto check = [](double w, const char* name) {
            if (!(w >= 0.0 && w <= 1.0)) {
                throw std::invalid_argument(std::string(name) + " weight must lie in [0,1]");
            }
        };
        check(cohesion, "cohesion");
        check(alignment, "alignment");
        check(separation, "separation");
    }
};

enum class AgentKind { BlueLeader, RedAgent, Blue };

inline const char* to_string(AgentKind k) {
    switch (k) {
        case AgentKind::BlueLeader: return "leader";
        case AgentKind::RedAgent: return "red";
        case AgentKind::Blue: return "blue";
    }
    return "?";
}

struct AgentState {
    AgentKind kind{AgentKind::Blue};
    Vec2 position;
    Vec2 velocity;
    double trust{1.0};  // in [-1,1]

    bool operator==(const AgentState&) const = default;
};

namespace detail {
template <class T>
T mean_of(std::span<const T> xs, T zero) {
    T sum = zero;
    for (const auto& x : xs) {
        sum += x;
    }
    return sum / static_cast<double>(xs.size());
}
}  // namespace detail

/// Pull toward the centroid of the linked neighbours. Zero with no neighbours.
inline Vec2 cohesion_velocity(const Vec2& self_position, std::span<const Vec2> neighbor_positions) {
    if (neighbor_positions.empty()) {
        return {};
    }
    return detail::mean_of(neighbor_positions, Vec2{}) - self_position;
}

/// Difference between the neighbours' mean velocity and our own.
inline Vec2 alignment_velocity(const Vec2& self_velocity, std::span<const Vec2> neighbor_velocities) {
    if (neighbor_velocities.empty()) {
        return {};
    }
    return detail::mean_of(neighbor_velocities, Vec2{}) - self_velocity;
}

/// Push away from every agent in the spatial neighbourhood. The caller has
/// already filtered the list down to agents inside the separation radius.
inline Vec2 separation_velocity(const Vec2& self_position, std::span<const Vec2> spatial_neighbor_positions) {
    Vec2 sum;
    for (const auto& p : spatial_neighbor_positions) {
        sum -= p - self_position;
    }
    return sum;
}

/// Midpoint of our trust and the neighbourhood mean; unchanged when isolated.
inline double update_trust(double self_trust, std::span<const double> neighbor_trusts) {
    if (neighbor_trusts.empty()) {
        return self_trust;
    }
    // Written as a step toward the neighbour mean so that a consensus value
    // is returned bit-for-bit.
    double gap = 0.0;
    for (double t : neighbor_trusts) {
        gap += t - self_trust;
    }
    gap /= static_cast<double>(neighbor_trusts.size());
    return std::clamp(self_trust + 0.5 * gap, -1.0, 1.0);
}

/**
 * Velocity update for every non-leader agent.
 *
 * Trust scales the cohesion and alignment terms only; a negative trust
 * reverses them and zero trust leaves just separation. The three steering
 * vectors are expected to be normalized already. The result is clamped to
 * magnitude v_max with heading preserved.
 */
inline Vec2 steer(const Vec2& velocity, double trust, const SteeringWeights& weights, const Vec2& cohesion_v,
                  const Vec2& alignment_v, const Vec2& separation_v, double v_max) {
    const Vec2 social = cohesion_v * weights.cohesion + alignment_v * weights.alignment;
    const Vec2 next = velocity + social * trust + separation_v * weights.separation;
    return clamp_magnitude(next, v_max);
}

/// Straight-line pursuit of the goal at fixed speed.
inline Vec2 leader_velocity(const Vec2& position, const Vec2& goal, double speed) {
    return clamp_magnitude(normalize(goal - position) * speed, speed);
}

/**
 * Advances a position by one step and applies the reflection rule: an axis
 * that leaves [0,extent] is mirrored about the crossed wall and the matching
 * velocity component flips sign. Requires |v| <= min(width, length) so one
 * mirror per axis is enough.
 */
inline std::pair<Vec2, Vec2> integrate_position(const Vec2& position, const Vec2& velocity, const WorldBounds& bounds) {
    assert(velocity.norm() <= std::min(bounds.width, bounds.length));
    Vec2 p = position + velocity;
    Vec2 v = velocity;

    auto reflect_axis = [](double& coord, double& vel, double extent) {
        if (coord > extent) {
            coord = 2.0 * extent - coord;
            vel = -vel;
        } else if (coord < 0.0) {
            coord = -coord;
            vel = -vel;
        }
        coord = std::clamp(coord, 0.0, extent);
    };
    reflect_axis(p.x, v.x, bounds.width);
    reflect_axis(p.y, v.y, bounds.length);
    return {p, v};
}

}  // namespace trustswarm
