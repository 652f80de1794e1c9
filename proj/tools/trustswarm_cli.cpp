// trustswarm: command line front end.
//
//   trustswarm run       [--config PATH] [--seed INT] [--out DIR] [--trace]
//   trustswarm stage1    [--config PATH] [--seed INT] [--out DIR] [--workers N]
//   trustswarm stage2    [--config PATH] [--seed INT] [--out DIR] [--workers N]
//   trustswarm footprint [--config PATH] [--seed INT] [--out DIR] [--trace]

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "trustswarm.hpp"

namespace fs = std::filesystem;
using namespace trustswarm;

namespace {

struct CommonFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<std::size_t> workers;
    bool trace{false};
};

void add_common(CLI::App* sub, CommonFlags& flags, bool with_trace) {
    sub->add_option("--config", flags.config_path, "key = value configuration file")->check(CLI::ExistingFile);
    sub->add_option("--seed", flags.seed, "master seed (overrides the config)");
    sub->add_option("--out", flags.out_dir, "output directory (overrides the config)");
    sub->add_option("--workers", flags.workers, "parallel runs")->check(CLI::PositiveNumber);
    if (with_trace) {
        sub->add_flag("--trace", flags.trace, "also write the per-tick trace CSV");
    }
}

CliConfig load(const CommonFlags& flags) {
    CliConfig cfg;
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path);
        if (!in) {
            throw std::runtime_error("cannot read " + flags.config_path);
        }
        std::ostringstream text;
        text << in.rdbuf();
        try {
            cfg = parse_config(text.str());
        } catch (const ConfigError& e) {
            throw std::runtime_error(flags.config_path + ": " + e.what());
        }
    }
    if (flags.seed) cfg.master_seed = *flags.seed;
    if (flags.out_dir) cfg.output_dir = *flags.out_dir;
    if (flags.workers) cfg.workers = *flags.workers;
    if (flags.trace) cfg.capture_trajectory = true;
    return cfg;
}

fs::path output_dir(const CliConfig& cfg) {
    fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
    }
    return dir;
}

void print_run(const RunResult& result) {
    for (const auto& rec : result.records) {
        std::printf("iteration %zu: steps %zu, mean blue distance %.6f%s\n", rec.iteration_index, rec.steps_taken,
                    rec.mean_blue_goal_distance, rec.hit_step_cap ? " (step cap reached)" : "");
    }
    std::printf("d_bar = %.6f\n", result.d_bar);
}

int cmd_run(const CliConfig& cfg) {
    const auto result = run_simulation(cfg.sim, cfg.master_seed, cfg.capture_trajectory);
    print_run(result);
    if (cfg.capture_trajectory) {
        const auto path = output_dir(cfg) / "trace.csv";
        emit_trace_csv(result.trajectory, path);
        std::printf("wrote %s\n", path.string().c_str());
    }
    return 0;
}

int cmd_stage(const CliConfig& cfg, int stage) {
    ExperimentOptions opts;
    opts.replicates = cfg.replicates;
    opts.master_seed = cfg.master_seed;
    opts.workers = cfg.workers;
    const auto result = stage == 1 ? run_stage1(cfg.sim, opts) : run_stage2(cfg.sim, opts);
    const auto path = output_dir(cfg) / (stage == 1 ? "stage1.csv" : "stage2.csv");
    emit_results_csv(result.rows, path);
    write_results_csv(std::cout, result.rows);
    std::printf("%zu runs; wrote %s\n", result.runs_executed, path.string().c_str());
    return 0;
}

int cmd_footprint(const CliConfig& cfg) {
    const auto result = run_simulation(cfg.sim, cfg.master_seed, true);
    const auto dir = output_dir(cfg);
    const auto svg = dir / "footprint.svg";
    render_footprints(result.trajectory, cfg.sim.bounds, svg);
    std::printf("d_bar = %.6f\nwrote %s\n", result.d_bar, svg.string().c_str());
    if (cfg.capture_trajectory) {
        const auto trace = dir / "trace.csv";
        emit_trace_csv(result.trajectory, trace);
        std::printf("wrote %s\n", trace.string().c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trust-based networked Boids with a red agent: single runs, factorial stages, footprints"};
    app.require_subcommand(1);

    CommonFlags run_flags, s1_flags, s2_flags, fp_flags;
    auto* run = app.add_subcommand("run", "run one simulation and print d_bar");
    auto* stage1 = app.add_subcommand("stage1", "noise-only factorial stage, writes stage1.csv");
    auto* stage2 = app.add_subcommand("stage2", "trust x noise factorial stage, writes stage2.csv");
    auto* footprint = app.add_subcommand("footprint", "run once with tracing and write footprint.svg");
    add_common(run, run_flags, true);
    add_common(stage1, s1_flags, false);
    add_common(stage2, s2_flags, false);
    add_common(footprint, fp_flags, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(load(run_flags));
        if (*stage1) return cmd_stage(load(s1_flags), 1);
        if (*stage2) return cmd_stage(load(s2_flags), 2);
        if (*footprint) return cmd_footprint(load(fp_flags));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    std::cerr << app.help();
    return 2;
}
