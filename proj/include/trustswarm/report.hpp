#pragma once
// Output writers: result tables (CSV), the per-tick trace, and footprint SVGs.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "trustswarm/engine.hpp"
#include "trustswarm/experiments.hpp"

namespace trustswarm {

namespace detail {

inline std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s(buf);
    if (s == "-0.00") {
        s = "0.00";
    }
    return s;
}

inline std::string full_precision(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

inline std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

inline void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

}  // namespace detail

enum class CsvPrecision { TwoDecimals, Full };

/// `scenario,effect,R1..Rn,avg,std,conf`, rows ordered by (scenario, effect).
inline void write_results_csv(std::ostream& os, std::vector<EffectRow> rows,
                              CsvPrecision precision = CsvPrecision::TwoDecimals) {
    if (rows.empty()) {
        throw std::invalid_argument("no result rows to write");
    }
    std::stable_sort(rows.begin(), rows.end(), [](const EffectRow& a, const EffectRow& b) {
        return std::pair(a.scenario, a.effect) < std::pair(b.scenario, b.effect);
    });
    const std::size_t width = rows.front().per_replicate.size();
    auto fmt = [precision](double v) {
        return precision == CsvPrecision::TwoDecimals ? detail::fixed2(v) : detail::full_precision(v);
    };

    os << "scenario,effect";
    for (std::size_t r = 1; r <= width; ++r) {
        os << ",R" << r;
    }
    os << ",avg,std,conf\n";
    for (const auto& row : rows) {
        if (row.per_replicate.size() != width) {
            throw std::invalid_argument("result rows disagree on replicate count");
        }
        os << to_string(row.scenario) << ',' << to_string(row.effect);
        for (double v : row.per_replicate) {
            os << ',' << fmt(v);
        }
        os << ',' << fmt(row.stats.mean) << ',' << fmt(row.stats.std) << ',' << fmt(row.stats.ci_halfwidth) << '\n';
    }
}

/// Writes the 2-decimal table to `destination` and the full-precision copy
/// next to it as `<stem>.raw.csv`.
inline void emit_results_csv(const std::vector<EffectRow>& rows, const std::filesystem::path& destination) {
    {
        auto out = detail::open_for_write(destination);
        write_results_csv(out, rows, CsvPrecision::TwoDecimals);
        detail::finish(out, destination);
    }
    auto raw_path = destination;
    raw_path.replace_extension(".raw.csv");
    auto raw = detail::open_for_write(raw_path);
    write_results_csv(raw, rows, CsvPrecision::Full);
    detail::finish(raw, raw_path);
}

inline void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace) {
    os << "tick,agent_id,kind,x,y,vx,vy,trust\n";
    for (const auto& r : trace) {
        os << r.tick << ',' << r.agent_id << ',' << to_string(r.kind) << ',' << detail::full_precision(r.position.x)
           << ',' << detail::full_precision(r.position.y) << ',' << detail::full_precision(r.velocity.x) << ','
           << detail::full_precision(r.velocity.y) << ',' << detail::full_precision(r.trust) << '\n';
    }
}

inline void emit_trace_csv(const std::vector<TraceRow>& trace, const std::filesystem::path& destination) {
    auto out = detail::open_for_write(destination);
    write_trace_csv(out, trace);
    detail::finish(out, destination);
}

/**
 * Footprint plot: every trace row becomes one circle at the agent's position.
 * Blue agents are small steel-blue dots, the leader larger navy dots drawn on
 * top, and red mid-sized red dots. World y points up, so screen y is
 * `length - y`; the viewBox is the world rectangle at 1:1. The four corners
 * (the only possible goal locations) are marked with hollow squares.
 */
inline void write_footprints_svg(std::ostream& os, const std::vector<TraceRow>& trace, const WorldBounds& bounds) {
    if (trace.empty()) {
        throw std::invalid_argument("cannot render an empty trajectory");
    }
    const double w = bounds.width;
    const double l = bounds.length;
    auto coord = [](double v) { return detail::fixed2(v); };

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 " << coord(w) << ' ' << coord(l)
       << "\" width=\"" << coord(w) << "\" height=\"" << coord(l) << "\">\n";
    os << "<rect class=\"world\" x=\"0\" y=\"0\" width=\"" << coord(w) << "\" height=\"" << coord(l)
       << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";

    constexpr double goal_size = 8.0;
    os << "<g class=\"goals\" fill=\"none\" stroke=\"darkgreen\" stroke-width=\"1\">\n";
    for (const auto& c : world_corners(bounds)) {
        const double x = std::clamp(c.x - goal_size / 2, 0.0, w - goal_size);
        const double y = std::clamp((l - c.y) - goal_size / 2, 0.0, l - goal_size);
        os << "<rect x=\"" << coord(x) << "\" y=\"" << coord(y) << "\" width=\"" << coord(goal_size)
           << "\" height=\"" << coord(goal_size) << "\"/>\n";
    }
    os << "</g>\n";

    // Leader last so its trail is never hidden under the blue dots.
    struct Layer {
        AgentKind kind;
        const char* css;
        const char* fill;
        double radius;
    };
    constexpr Layer layers[] = {
        {AgentKind::Blue, "blue", "steelblue", 1.0},
        {AgentKind::RedAgent, "red", "red", 1.5},
        {AgentKind::BlueLeader, "leader", "navy", 2.5},
    };
    for (const auto& layer : layers) {
        os << "<g class=\"" << layer.css << "\" fill=\"" << layer.fill << "\">\n";
        for (const auto& r : trace) {
            if (r.kind != layer.kind) {
                continue;
            }
            os << "<circle cx=\"" << coord(r.position.x) << "\" cy=\"" << coord(l - r.position.y) << "\" r=\""
               << coord(layer.radius) << "\"/>\n";
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
}

inline void render_footprints(const std::vector<TraceRow>& trace, const WorldBounds& bounds,
                              const std::filesystem::path& destination) {
    auto out = detail::open_for_write(destination);
    write_footprints_svg(out, trace, bounds);
    detail::finish(out, destination);
}

}  // namespace trustswarm
