#pragma once
// Flat `key = value` configuration documents for the command line front end.
//
//   # comment
//   eta = 0.9
//   scenario = both
//
// Unknown keys, unparseable values and out-of-range values are rejected with
// the offending line number. Keys left out keep their defaults.

#include <charconv>
#include <cstdint>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "trustswarm/engine.hpp"

namespace trustswarm {

struct CliConfig {
    SimConfig sim{};
    std::size_t replicates{10};
    std::uint64_t master_seed{42};
    std::string output_dir{"."};
    bool capture_trajectory{false};
    std::size_t workers{1};

    bool operator==(const CliConfig& o) const;
};

class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::size_t line, const std::string& what)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    /// 1-based line of the offending entry, 0 for whole-document problems.
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

template <class T>
bool parse_number(std::string_view s, T& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

inline bool parse_bool(std::string_view s, bool& out) {
    if (s == "true" || s == "1" || s == "yes" || s == "on") {
        out = true;
        return true;
    }
    if (s == "false" || s == "0" || s == "no" || s == "off") {
        out = false;
        return true;
    }
    return false;
}

/// One recognised key: how to parse it into a CliConfig and print it back.
struct ConfigKey {
    std::string name;
    std::string range;  // human-readable, used in error messages
    std::function<bool(std::string_view, CliConfig&)> set;  // false on bad syntax or range
    std::function<std::string(const CliConfig&)> get;  // takes a copy where the accessor needs a mutable ref
};

inline ConfigKey real_key(std::string name, double lo, double hi, bool lo_open,
                          std::function<double&(CliConfig&)> ref) {
    std::string range = std::string(lo_open ? "(" : "[") + format_double(lo) + ", " +
                        (hi == std::numeric_limits<double>::infinity() ? "inf)" : format_double(hi) + "]");
    return {name, range,
            [=](std::string_view s, CliConfig& c) {
                double v = 0.0;
                if (!parse_number(s, v)) return false;
                if (lo_open ? !(v > lo) : !(v >= lo)) return false;
                if (!(v <= hi)) return false;
                ref(c) = v;
                return true;
            },
            [=](CliConfig c) { return format_double(ref(c)); }};
}

inline ConfigKey count_key(std::string name, std::size_t lo, std::function<std::size_t&(CliConfig&)> ref) {
    return {name, "integer >= " + std::to_string(lo),
            [=](std::string_view s, CliConfig& c) {
                std::size_t v = 0;
                if (!parse_number(s, v) || v < lo) return false;
                ref(c) = v;
                return true;
            },
            [=](CliConfig c) { return std::to_string(ref(c)); }};
}

inline ConfigKey bool_key(std::string name, std::function<bool&(CliConfig&)> ref) {
    return {name, "true or false",
            [=](std::string_view s, CliConfig& c) { return parse_bool(s, ref(c)); },
            [=](CliConfig c) { return std::string(ref(c) ? "true" : "false"); }};
}

inline const std::vector<ConfigKey>& config_keys() {
    constexpr double inf = std::numeric_limits<double>::infinity();
    static const std::vector<ConfigKey> keys = {
        count_key("n_blue", 1, [](CliConfig& c) -> std::size_t& { return c.sim.n_blue; }),
        real_key("width", 0.0, inf, true, [](CliConfig& c) -> double& { return c.sim.bounds.width; }),
        real_key("length", 0.0, inf, true, [](CliConfig& c) -> double& { return c.sim.bounds.length; }),
        real_key("w_c", 0.0, 1.0, false, [](CliConfig& c) -> double& { return c.sim.weights.cohesion; }),
        real_key("w_a", 0.0, 1.0, false, [](CliConfig& c) -> double& { return c.sim.weights.alignment; }),
        real_key("w_s", 0.0, 1.0, false, [](CliConfig& c) -> double& { return c.sim.weights.separation; }),
        real_key("graph_p", 0.0, 1.0, false, [](CliConfig& c) -> double& { return c.sim.graph_p; }),
        real_key("eta", 0.0, 1.0, false, [](CliConfig& c) -> double& { return c.sim.eta; }),
        real_key("tau_blue_leader", -1.0, 1.0, false, [](CliConfig& c) -> double& { return c.sim.tau_blue_leader; }),
        real_key("tau_red", -1.0, 1.0, false, [](CliConfig& c) -> double& { return c.sim.tau_red; }),
        bool_key("trust_dynamics_enabled", [](CliConfig& c) -> bool& { return c.sim.trust_dynamics_enabled; }),
        {"scenario", "velocity_noise, network_changes or both",
         [](std::string_view s, CliConfig& c) {
             const auto k = scenario_from_string(std::string(s));
             if (!k) return false;
             c.sim.scenario = *k;
             return true;
         },
         [](const CliConfig& c) { return std::string(to_string(c.sim.scenario)); }},
        count_key("iterations", 2, [](CliConfig& c) -> std::size_t& { return c.sim.iterations; }),
        real_key("delta", 0.0, inf, true, [](CliConfig& c) -> double& { return c.sim.delta; }),
        real_key("r_sep", 0.0, inf, false, [](CliConfig& c) -> double& { return c.sim.r_sep; }),
        real_key("v_max", 0.0, inf, true, [](CliConfig& c) -> double& { return c.sim.v_max; }),
        real_key("leader_speed", 0.0, inf, true, [](CliConfig& c) -> double& { return c.sim.leader_speed; }),
        count_key("max_steps_per_iteration", 1,
                  [](CliConfig& c) -> std::size_t& { return c.sim.max_steps_per_iteration; }),
        count_key("replicates", 2, [](CliConfig& c) -> std::size_t& { return c.replicates; }),
        {"master_seed", "unsigned 64-bit integer",
         [](std::string_view s, CliConfig& c) { return parse_number(s, c.master_seed); },
         [](const CliConfig& c) { return std::to_string(c.master_seed); }},
        {"output_dir", "non-empty path",
         [](std::string_view s, CliConfig& c) {
             if (s.empty()) return false;
             c.output_dir = std::string(s);
             return true;
         },
         [](const CliConfig& c) { return c.output_dir; }},
        bool_key("capture_trajectory", [](CliConfig& c) -> bool& { return c.capture_trajectory; }),
        count_key("workers", 1, [](CliConfig& c) -> std::size_t& { return c.workers; }),
    };
    return keys;
}

}  // namespace detail

inline CliConfig parse_config(std::string_view text) {
    CliConfig cfg;
    const auto& keys = detail::config_keys();
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = detail::trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(line_no, "expected `key = value`");
        }
        const auto key = detail::trim(line.substr(0, eq));
        const auto value = detail::trim(line.substr(eq + 1));

        const detail::ConfigKey* match = nullptr;
        for (const auto& k : keys) {
            if (k.name == key) {
                match = &k;
                break;
            }
        }
        if (match == nullptr) {
            throw ConfigError(line_no, "unknown key `" + std::string(key) + "`");
        }
        if (!match->set(value, cfg)) {
            throw ConfigError(line_no, "invalid value `" + std::string(value) + "` for `" + match->name +
                                           "` (expected " + match->range + ")");
        }
    }
    try {
        cfg.sim.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(0, e.what());
    }
    return cfg;
}

/// Writes every key in `key = value` form; parse_config reads it back unchanged.
inline std::string emit_config(const CliConfig& cfg) {
    std::ostringstream os;
    for (const auto& k : detail::config_keys()) {
        os << k.name << " = " << k.get(cfg) << '\n';
    }
    return os.str();
}

inline bool CliConfig::operator==(const CliConfig& o) const {
    return emit_config(*this) == emit_config(o);
}

}  // namespace trustswarm
