#pragma once
/**
 * @file experiments.hpp
 * @brief Two-stage 2^k factorial study over the swarm model.
 *
 * Stage 1 varies only the red noise level (trust frozen at 1). Stage 2 crosses
 * leader trust, red trust and noise level with trust dynamics on. Within a
 * replicate every run shares one seed, so all levels start from the same
 * agents, headings, trusts and graph; effects are computed per replicate and
 * then summarised. Stage 1 rows use the population standard deviation and
 * stage 2 rows the sample one, matching the two published tables.
 */

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "trustswarm/engine.hpp"

namespace trustswarm {

struct FactorLevels {
    double eta_low{0.1};
    double eta_high{0.9};
    double tau_blue_leader_low{0.2};
    double tau_blue_leader_high{1.0};
    double tau_red_low{-0.2};
    double tau_red_high{-1.0};
};

/// Divisor used for the standard deviation.
enum class StdConvention {
    Population,  // n
    Sample,      // n - 1
};

struct SummaryStats {
    double mean{0.0};
    double std{0.0};
    double ci_halfwidth{0.0};  // two-sided, alpha = 0.05

    bool operator==(const SummaryStats&) const = default;
};

/// Two-sided Student t critical value at alpha = 0.05 with `dof` degrees of freedom.
inline double t_critical_975(std::size_t dof) {
    boost::math::students_t dist(static_cast<double>(dof));
    return boost::math::quantile(dist, 0.975);
}

/**
 * Mean, standard deviation and 95% confidence half-width
 * t(0.975, n-1) * std / sqrt(n).
 *
 * The published noise-only table uses the divisor-n deviation, the trust
 * table the divisor-(n-1) one; both feed the same half-width formula.
 */
inline SummaryStats summary_stats(const std::vector<double>& values,
                                  StdConvention convention = StdConvention::Population) {
    if (values.size() < 2) {
        throw std::invalid_argument("summary statistics need at least 2 values");
    }
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    const double divisor = convention == StdConvention::Population ? n : n - 1.0;
    const double sd = std::sqrt(ss / divisor);
    return {mean, sd, t_critical_975(values.size() - 1) * sd / std::sqrt(n)};
}

enum class EffectName { DBarEtaLow, DBarEtaHigh, EEta, ETauB, ETauR, EN };

inline const char* to_string(EffectName e) {
    switch (e) {
        case EffectName::DBarEtaLow: return "d_eta_low";
        case EffectName::DBarEtaHigh: return "d_eta_high";
        case EffectName::EEta: return "e_eta";
        case EffectName::ETauB: return "e_tauB";
        case EffectName::ETauR: return "e_tauR";
        case EffectName::EN: return "e_N";
    }
    return "?";
}

struct EffectRow {
    ScenarioKind scenario{ScenarioKind::VelocityNoise};
    EffectName effect{EffectName::EEta};
    std::vector<double> per_replicate;
    SummaryStats stats;

    bool operator==(const EffectRow&) const = default;
};

inline EffectRow make_row(ScenarioKind scenario, EffectName effect, std::vector<double> values,
                          StdConvention convention) {
    EffectRow row{scenario, effect, std::move(values), {}};
    row.stats = summary_stats(row.per_replicate, convention);
    return row;
}

/// Paired noise effect for one replicate.
inline double stage1_effect(double d_low, double d_high) { return d_high - d_low; }

enum class Level { Low, High };

struct FactorCombination {
    Level tau_blue_leader{Level::Low};
    Level tau_red{Level::Low};
    Level eta{Level::Low};

    auto operator<=>(const FactorCombination&) const = default;
};

enum class Factor { TauBlueLeader, TauRed, Eta };

inline std::array<FactorCombination, 8> all_combinations() {
    std::array<FactorCombination, 8> out{};
    std::size_t k = 0;
    for (Level b : {Level::Low, Level::High}) {
        for (Level r : {Level::Low, Level::High}) {
            for (Level e : {Level::Low, Level::High}) {
                out[k++] = {b, r, e};
            }
        }
    }
    return out;
}

/// Mean response at the factor's "+" level minus mean response at its "-" level.
inline double main_effect(const std::map<FactorCombination, double>& d_by_combination, Factor factor) {
    double high = 0.0;
    double low = 0.0;
    for (const auto& c : all_combinations()) {
        const auto it = d_by_combination.find(c);
        if (it == d_by_combination.end()) {
            throw std::invalid_argument("main effect needs all 8 factor combinations");
        }
        const Level level = factor == Factor::TauBlueLeader ? c.tau_blue_leader
                            : factor == Factor::TauRed      ? c.tau_red
                                                            : c.eta;
        (level == Level::High ? high : low) += it->second;
    }
    return high / 4.0 - low / 4.0;
}

/// Seed for one replicate. The scenario is deliberately not mixed in, so the
/// same replicate starts from the same population in every scenario.
inline std::uint64_t replicate_seed(std::uint64_t master_seed, std::size_t replicate) {
    auto splitmix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return splitmix(splitmix(master_seed) ^ static_cast<std::uint64_t>(replicate));
}

struct ExperimentOptions {
    std::size_t replicates{10};
    std::uint64_t master_seed{0};
    std::size_t workers{1};
    FactorLevels levels{};
};

struct StageResult {
    std::vector<EffectRow> rows;
    std::size_t runs_executed{0};
};

namespace detail {

struct RunJob {
    SimConfig config;
    std::uint64_t seed{0};
    std::string label;
};

/// Executes every job, possibly on several threads. Results come back in job
/// order regardless of scheduling.
inline std::vector<double> run_jobs(const std::vector<RunJob>& jobs, std::size_t workers) {
    std::vector<double> out(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                out[i] = run_simulation(jobs[i].config, jobs[i].seed).d_bar;
            } catch (const std::exception& e) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::make_exception_ptr(std::runtime_error(jobs[i].label + ": " + e.what()));
                }
            }
        }
    };

    const std::size_t n_threads = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(jobs.size(), 1));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < n_threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

inline void check_replicates(std::size_t replicates) {
    if (replicates < 2) {
        throw std::invalid_argument("at least 2 replicates are required");
    }
}

inline std::string job_label(ScenarioKind s, std::size_t replicate, const std::string& level) {
    return std::string("scenario ") + to_string(s) + ", replicate " + std::to_string(replicate + 1) + ", " + level;
}

}  // namespace detail

/// Stage 1: noise level only, all trusts frozen at 1. Emits, per scenario,
/// the low-noise d-bar row, the high-noise d-bar row and the paired e_eta row.
inline StageResult run_stage1(const SimConfig& config_base, const ExperimentOptions& options) {
    detail::check_replicates(options.replicates);
    config_base.validate();
    const std::size_t reps = options.replicates;

    std::vector<detail::RunJob> jobs;
    for (ScenarioKind s : kAllScenarios) {
        for (std::size_t r = 0; r < reps; ++r) {
            for (Level eta : {Level::Low, Level::High}) {
                SimConfig c = config_base;
                c.scenario = s;
                c.trust_dynamics_enabled = false;
                c.eta = eta == Level::Low ? options.levels.eta_low : options.levels.eta_high;
                jobs.push_back({c, replicate_seed(options.master_seed, r),
                                detail::job_label(s, r, eta == Level::Low ? "eta-" : "eta+")});
            }
        }
    }
    const auto d = detail::run_jobs(jobs, options.workers);

    StageResult result;
    result.runs_executed = jobs.size();
    std::size_t k = 0;
    for (ScenarioKind s : kAllScenarios) {
        std::vector<double> low(reps), high(reps), effect(reps);
        for (std::size_t r = 0; r < reps; ++r) {
            low[r] = d[k++];
            high[r] = d[k++];
            effect[r] = stage1_effect(low[r], high[r]);
        }
        result.rows.push_back(make_row(s, EffectName::DBarEtaLow, std::move(low), StdConvention::Population));
        result.rows.push_back(make_row(s, EffectName::DBarEtaHigh, std::move(high), StdConvention::Population));
        result.rows.push_back(make_row(s, EffectName::EEta, std::move(effect), StdConvention::Population));
    }
    return result;
}

/// Stage 2: full 2^3 design over leader trust, red trust and noise with trust
/// dynamics on. Emits e_tauB, e_tauR and e_N rows per scenario.
inline StageResult run_stage2(const SimConfig& config_base, const ExperimentOptions& options) {
    detail::check_replicates(options.replicates);
    config_base.validate();
    const std::size_t reps = options.replicates;
    const auto& lv = options.levels;
    const auto combos = all_combinations();

    std::vector<detail::RunJob> jobs;
    for (ScenarioKind s : kAllScenarios) {
        for (std::size_t r = 0; r < reps; ++r) {
            for (const auto& c : combos) {
                SimConfig cfg = config_base;
                cfg.scenario = s;
                cfg.trust_dynamics_enabled = true;
                cfg.tau_blue_leader = c.tau_blue_leader == Level::High ? lv.tau_blue_leader_high : lv.tau_blue_leader_low;
                cfg.tau_red = c.tau_red == Level::High ? lv.tau_red_high : lv.tau_red_low;
                cfg.eta = c.eta == Level::High ? lv.eta_high : lv.eta_low;
                const std::string level = std::string("tauB") + (c.tau_blue_leader == Level::High ? "+" : "-") +
                                          " tauR" + (c.tau_red == Level::High ? "+" : "-") + " eta" +
                                          (c.eta == Level::High ? "+" : "-");
                jobs.push_back({cfg, replicate_seed(options.master_seed, r), detail::job_label(s, r, level)});
            }
        }
    }
    const auto d = detail::run_jobs(jobs, options.workers);

    StageResult result;
    result.runs_executed = jobs.size();
    std::size_t k = 0;
    for (ScenarioKind s : kAllScenarios) {
        std::vector<double> e_b(reps), e_r(reps), e_n(reps);
        for (std::size_t r = 0; r < reps; ++r) {
            std::map<FactorCombination, double> table;
            for (const auto& c : combos) {
                table[c] = d[k++];
            }
            e_b[r] = main_effect(table, Factor::TauBlueLeader);
            e_r[r] = main_effect(table, Factor::TauRed);
            e_n[r] = main_effect(table, Factor::Eta);
        }
        result.rows.push_back(make_row(s, EffectName::ETauB, std::move(e_b), StdConvention::Sample));
        result.rows.push_back(make_row(s, EffectName::ETauR, std::move(e_r), StdConvention::Sample));
        result.rows.push_back(make_row(s, EffectName::EN, std::move(e_n), StdConvention::Sample));
    }
    return result;
}

}  // namespace trustswarm
