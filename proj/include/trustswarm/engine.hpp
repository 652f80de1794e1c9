#pragma once
/**
 * @file engine.hpp
 * @brief Tick pipeline and run lifecycle for the trust-based swarm.
 *
 * Agent layout is fixed: index 0 is the blue leader, index 1 the red agent,
 * and 2..n_blue+1 the ordinary blue agents.
 *
 * Each tick runs, in order: red rewiring (network scenarios), perception from
 * the time-t snapshot, synchronous trust update, steering, red velocity noise
 * (noise scenarios), leader pursuit, then integration with reflection.
 *
 * Randomness is split into independent streams (initialisation, goal
 * relocation, velocity noise, rewiring) all derived from the run seed. A
 * scenario that never draws from a stream therefore cannot perturb the others,
 * and runs that share a seed share their initial state exactly.
 */

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "trustswarm/network.hpp"
#include "trustswarm/steering.hpp"
#include "trustswarm/vec2.hpp"

namespace trustswarm {

inline constexpr std::size_t kLeaderIndex = 0;
inline constexpr std::size_t kRedIndex = 1;
inline constexpr std::size_t kFirstBlueIndex = 2;

enum class ScenarioKind { VelocityNoise, NetworkChanges, Both };

inline constexpr ScenarioKind kAllScenarios[] = {ScenarioKind::VelocityNoise, ScenarioKind::NetworkChanges,
                                                 ScenarioKind::Both};

inline const char* to_string(ScenarioKind s) {
    switch (s) {
        case ScenarioKind::VelocityNoise: return "velocity_noise";
        case ScenarioKind::NetworkChanges: return "network_changes";
        case ScenarioKind::Both: return "both";
    }
    return "?";
}

inline std::optional<ScenarioKind> scenario_from_string(const std::string& s) {
    for (ScenarioKind k : kAllScenarios) {
        if (s == to_string(k)) {
            return k;
        }
    }
    return std::nullopt;
}

constexpr bool has_velocity_noise(ScenarioKind s) {
    return s == ScenarioKind::VelocityNoise || s == ScenarioKind::Both;
}
constexpr bool has_network_changes(ScenarioKind s) {
    return s == ScenarioKind::NetworkChanges || s == ScenarioKind::Both;
}

struct SimConfig {
    std::size_t n_blue{25};
    WorldBounds bounds{};
    SteeringWeights weights{};
    double graph_p{0.1};
    double eta{0.1};              // red noise level; also the per-tick rewiring probability
    double tau_blue_leader{1.0};  // frozen leader trust
    double tau_red{1.0};          // frozen red trust
    bool trust_dynamics_enabled{false};
    ScenarioKind scenario{ScenarioKind::VelocityNoise};
    std::size_t iterations{11};  // includes the warm-up iteration
    double delta{10.0};          // goal capture radius
    double r_sep{20.0};          // separation radius
    double v_max{1.0};
    double leader_speed{1.0};
    std::size_t max_steps_per_iteration{5000};

    std::size_t agent_count() const { return n_blue + 2; }

    void validate() const {
        auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
        if (n_blue < 1) fail("n_blue must be at least 1");
        bounds.validate();
        weights.validate();
        if (!(graph_p >= 0.0 && graph_p <= 1.0)) fail("graph_p must lie in [0,1]");
        if (!(eta >= 0.0 && eta <= 1.0)) fail("eta must lie in [0,1]");
        if (!(tau_blue_leader >= -1.0 && tau_blue_leader <= 1.0)) fail("tau_blue_leader must lie in [-1,1]");
        if (!(tau_red >= -1.0 && tau_red <= 1.0)) fail("tau_red must lie in [-1,1]");
        if (iterations < 2) fail("iterations must be at least 2");
        if (!(delta > 0.0)) fail("delta must be positive");
        if (!(r_sep >= 0.0)) fail("r_sep must be non-negative");
        if (!(v_max > 0.0 && v_max <= std::min(bounds.width, bounds.length))) {
            fail("v_max must lie in (0, min(width, length)]");
        }
        if (!(leader_speed > 0.0 && leader_speed <= v_max)) fail("leader_speed must lie in (0, v_max]");
        if (max_steps_per_iteration < 1) fail("max_steps_per_iteration must be at least 1");
    }
};

struct RandomStreams {
    std::mt19937_64 init;
    std::mt19937_64 goal;
    std::mt19937_64 noise;
    std::mt19937_64 network;

    explicit RandomStreams(std::uint64_t seed)
        : init(stream(seed, 1)), goal(stream(seed, 2)), noise(stream(seed, 3)), network(stream(seed, 4)) {}

    bool operator==(const RandomStreams&) const = default;

  private:
    static std::mt19937_64 stream(std::uint64_t seed, std::uint32_t id) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), id};
        return std::mt19937_64(seq);
    }
};

struct IterationRecord {
    std::size_t iteration_index{0};
    std::size_t steps_taken{0};
    double mean_blue_goal_distance{0.0};
    bool hit_step_cap{false};  // leader never reached the goal; distance taken at the cap

    bool operator==(const IterationRecord&) const = default;
};

struct SimState {
    std::vector<AgentState> agents;
    AgentGraph graph;
    Vec2 goal;
    std::size_t tick{0};
    std::size_t iteration{0};
    std::size_t steps_in_iteration{0};
    std::vector<IterationRecord> records;
    RandomStreams rng{0};

    const AgentState& leader() const { return agents[kLeaderIndex]; }
    const AgentState& red() const { return agents[kRedIndex]; }
};

/// One row of the per-tick trace: `tick,agent_id,kind,x,y,vx,vy,trust`.
struct TraceRow {
    std::size_t tick{0};
    std::size_t agent_id{0};
    AgentKind kind{AgentKind::Blue};
    Vec2 position;
    Vec2 velocity;
    double trust{0.0};

    bool operator==(const TraceRow&) const = default;
};

struct RunResult {
    std::vector<IterationRecord> records;
    double d_bar{0.0};
    std::vector<TraceRow> trajectory;  // empty unless capture was requested

    bool operator==(const RunResult&) const = default;
};

inline std::vector<Vec2> world_corners(const WorldBounds& b) {
    return {{0.0, 0.0}, {b.width, 0.0}, {0.0, b.length}, {b.width, b.length}};
}

/// Mean distance from the ordinary blue agents (leader and red excluded) to `target`.
inline double mean_blue_distance(const std::vector<AgentState>& agents, const Vec2& target) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& a : agents) {
        if (a.kind == AgentKind::Blue) {
            sum += distance(a.position, target);
            ++count;
        }
    }
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

/// Effect of a run: mean of the per-iteration blue distances with the warm-up iteration dropped.
inline double effect_metric(const std::vector<IterationRecord>& records) {
    if (records.size() < 2) {
        throw std::invalid_argument("effect metric needs at least 2 iteration records");
    }
    double sum = 0.0;
    for (std::size_t m = 1; m < records.size(); ++m) {
        sum += records[m].mean_blue_goal_distance;
    }
    return sum / static_cast<double>(records.size() - 1);
}

inline SimState init_run(const SimConfig& config, std::uint64_t seed) {
    config.validate();
    SimState s;
    s.rng = RandomStreams(seed);
    auto& rng = s.rng.init;

    const std::size_t n = config.agent_count();
    std::uniform_real_distribution<double> ux(0.0, config.bounds.width);
    std::uniform_real_distribution<double> uy(0.0, config.bounds.length);
    std::uniform_real_distribution<double> heading(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> trust(-1.0, 1.0);

    s.agents.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& a = s.agents[i];
        a.kind = i == kLeaderIndex ? AgentKind::BlueLeader : i == kRedIndex ? AgentKind::RedAgent : AgentKind::Blue;
        a.position = {ux(rng), uy(rng)};
        const double theta = heading(rng);
        a.velocity = {std::cos(theta), std::sin(theta)};
    }
    // Blue trusts are always drawn so the rest of the stream does not depend
    // on whether trust dynamics are on.
    for (std::size_t i = kFirstBlueIndex; i < n; ++i) {
        const double t = trust(rng);
        s.agents[i].trust = config.trust_dynamics_enabled ? t : 1.0;
    }
    s.agents[kLeaderIndex].trust = config.trust_dynamics_enabled ? config.tau_blue_leader : 1.0;
    s.agents[kRedIndex].trust = config.trust_dynamics_enabled ? config.tau_red : 1.0;

    s.graph = generate_random_graph(n, config.graph_p, rng);

    const auto corners = world_corners(config.bounds);
    std::uniform_int_distribution<std::size_t> corner(0, corners.size() - 1);
    s.goal = corners[corner(rng)];
    return s;
}

/// Advances the state by one synchronous tick.
inline void step(SimState& state, const SimConfig& config) {
    const std::size_t n = state.agents.size();

    if (has_network_changes(config.scenario)) {
        std::bernoulli_distribution fire(config.eta);
        if (fire(state.rng.network)) {
            rewire_red_in_place(state.graph, kRedIndex, kLeaderIndex, state.rng.network);
        }
    }

    const std::vector<AgentState> snapshot = state.agents;
    const double r_sep_sq = config.r_sep * config.r_sep;

    std::vector<Vec2> cohesion(n), alignment(n), separation(n);
    std::vector<double> trust(n);
    std::vector<Vec2> positions, velocities, close;
    std::vector<double> trusts;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& self = snapshot[i];
        trust[i] = self.trust;
        if (i == kLeaderIndex) {
            continue;
        }
        positions.clear();
        velocities.clear();
        trusts.clear();
        for (VertexId j : state.graph.neighbors(i)) {
            positions.push_back(snapshot[j].position);
            velocities.push_back(snapshot[j].velocity);
            trusts.push_back(snapshot[j].trust);
        }
        close.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i && (snapshot[j].position - self.position).norm_squared() <= r_sep_sq) {
                close.push_back(snapshot[j].position);
            }
        }
        cohesion[i] = normalize(cohesion_velocity(self.position, positions));
        alignment[i] = normalize(alignment_velocity(self.velocity, velocities));
        separation[i] = normalize(separation_velocity(self.position, close));
        if (config.trust_dynamics_enabled && self.kind == AgentKind::Blue) {
            trust[i] = update_trust(self.trust, trusts);
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (i == kLeaderIndex) {
            continue;
        }
        auto& a = state.agents[i];
        a.trust = trust[i];
        a.velocity = steer(a.velocity, a.trust, config.weights, cohesion[i], alignment[i], separation[i],
                           config.v_max);
    }

    if (has_velocity_noise(config.scenario) && config.eta > 0.0) {
        std::normal_distribution<double> noise(0.0, config.eta);
        auto& red = state.agents[kRedIndex];
        const double nx = noise(state.rng.noise);
        const double ny = noise(state.rng.noise);
        red.velocity = clamp_magnitude(red.velocity + Vec2{nx, ny}, config.v_max);
    }

    auto& leader = state.agents[kLeaderIndex];
    leader.velocity = leader_velocity(leader.position, state.goal, config.leader_speed);

    for (auto& a : state.agents) {
        std::tie(a.position, a.velocity) = integrate_position(a.position, a.velocity, config.bounds);
    }
    ++state.tick;
    ++state.steps_in_iteration;
}

inline bool leader_at_goal(const SimState& state, const SimConfig& config) {
    return distance(state.leader().position, state.goal) <= config.delta;
}

namespace detail {
inline void close_iteration(SimState& state, const SimConfig& config, bool hit_cap) {
    state.records.push_back({state.iteration, state.steps_in_iteration,
                             mean_blue_distance(state.agents, state.goal), hit_cap});
    const auto corners = world_corners(config.bounds);
    std::vector<Vec2> others;
    for (const auto& c : corners) {
        if (!(c == state.goal)) {
            others.push_back(c);
        }
    }
    std::uniform_int_distribution<std::size_t> pick(0, others.size() - 1);
    state.goal = others[pick(state.rng.goal)];
    ++state.iteration;
    state.steps_in_iteration = 0;
}
}  // namespace detail

/// Leader has entered the goal's capture radius: record the blue distances to
/// the retiring goal, then move the goal to one of the other three corners.
inline void relocate_goal(SimState& state, const SimConfig& config) {
    assert(leader_at_goal(state, config));
    detail::close_iteration(state, config, false);
}

inline void append_trace(std::vector<TraceRow>& out, const SimState& state) {
    for (std::size_t i = 0; i < state.agents.size(); ++i) {
        const auto& a = state.agents[i];
        out.push_back({state.tick, i, a.kind, a.position, a.velocity, a.trust});
    }
}

inline RunResult run_simulation(const SimConfig& config, std::uint64_t seed, bool capture_trajectory = false) {
    SimState state = init_run(config, seed);
    RunResult result;
    if (capture_trajectory) {
        append_trace(result.trajectory, state);
    }
    while (state.iteration < config.iterations) {
        if (leader_at_goal(state, config)) {
            relocate_goal(state, config);
        } else if (state.steps_in_iteration >= config.max_steps_per_iteration) {
            detail::close_iteration(state, config, true);
        } else {
            step(state, config);
            if (capture_trajectory) {
                append_trace(result.trajectory, state);
            }
        }
    }
    result.records = std::move(state.records);
    result.d_bar = effect_metric(result.records);
    return result;
}

}  // namespace trustswarm
