#include "qkdlink/scenario/sweep.hpp"

#include <cmath>
#include <fstream>

#include "qkdlink/util/rng.hpp"

namespace qkdlink::scenario {

namespace {

constexpr double kLeadCapS = 18000.0;
constexpr double kLeadHorizonS = 36000.0;
constexpr double kTraceDurationS = kLeadCapS + kLeadHorizonS;

qkd::KeyGenTrace cell_trace(const ScenarioConfig& cfg, double distance_km,
                            std::uint64_t seed) {
    if (cfg.trace_file) {
        std::ifstream in(*cfg.trace_file);
        return qkd::load_trace(in);
    }
    return qkd::synthesize_calibrated_trace(cfg.channel.at_length(distance_km),
                                            kTraceDurationS, seed);
}

} // namespace

comm::UseCaseConfig sweep_use_case(const ScenarioConfig& cfg,
                                   std::int64_t n_signals,
                                   double sampling_rate_hz,
                                   crypto::Algorithm algorithm) {
    comm::UseCaseConfig uc = cfg.use_case;
    uc.n_signals = n_signals;
    uc.sampling_rate_hz = sampling_rate_hz;
    uc.reporting_rate_hz = sampling_rate_hz;
    uc.algorithm = algorithm;
    uc.key_reuse_factor = algorithm == crypto::Algorithm::OTP
                              ? 1.0
                              : comm::reusability_factor(uc);
    uc.autonomy_target_s = cfg.failure.autonomy_target_s;
    return uc;
}

std::uint64_t cell_seed(std::uint64_t master, std::size_t cell_index) {
    return mix_seed(master, static_cast<std::uint64_t>(cell_index));
}

LeadSweepResult run_lead_sweep(const ScenarioConfig& cfg) {
    LeadSweepResult result;
    std::size_t index = 0;
    for (double d : cfg.sweep.distances_km)
        for (std::int64_t n : cfg.sweep.n_signals)
            for (double fs : cfg.sweep.sampling_rates_hz)
                for (auto alg : cfg.sweep.algorithms) {
                    LeadCell cell;
                    cell.distance_km = d;
                    cell.n_signals = n;
                    cell.sampling_rate_hz = fs;
                    cell.algorithm = alg;
                    const auto seed = cell_seed(cfg.run.seed, index++);
                    try {
                        const auto trace = cell_trace(cfg, d, seed);
                        const auto uc = sweep_use_case(cfg, n, fs, alg);
                        cell.lead_s = pool::min_lead_time(trace, uc);
                    } catch (const std::exception& e) {
                        cell.error = e.what();
                    }
                    result.cells.push_back(std::move(cell));
                }
    return result;
}

FailSweepResult run_fail_sweep(const ScenarioConfig& cfg) {
    FailSweepResult result;
    std::size_t index = 0;
    for (double d : cfg.sweep.distances_km)
        for (std::int64_t n : cfg.sweep.n_signals)
            for (double fs : cfg.sweep.sampling_rates_hz)
                for (double offset : cfg.failure.fail_offsets_s) {
                    FailCell cell;
                    cell.distance_km = d;
                    cell.n_signals = n;
                    cell.sampling_rate_hz = fs;
                    cell.fail_offset_s = offset;
                    const auto seed = cell_seed(cfg.run.seed, index++);
                    try {
                        const auto trace = cell_trace(cfg, d, seed);
                        const auto uc = sweep_use_case(
                            cfg, n, fs, cfg.use_case.algorithm);
                        cell.lead_s = pool::min_lead_time(trace, uc);
                        if (!cell.lead_s) {
                            result.cells.push_back(std::move(cell));
                            continue;
                        }
                        const double step = comm::effective_period(uc);
                        pool::ConsumptionSchedule sched;
                        sched.lead_steps = static_cast<std::int64_t>(
                            std::llround(*cell.lead_s / step));
                        sched.normal_bits_per_period =
                            pool::demand_bits_per_period(uc);
                        sched.post_failure_bits_per_period =
                            sched.normal_bits_per_period;
                        sched.fail_step = static_cast<std::int64_t>(
                            std::llround((*cell.lead_s + offset) / step));
                        cell.uptime_s =
                            pool::post_failure_uptime(trace, sched, step);
                        if (cfg.failure.switch_to)
                            cell.uptime_switch_s = pool::uptime_with_switch(
                                trace, sched, *cfg.failure.switch_to, uc,
                                step);
                    } catch (const std::exception& e) {
                        cell.error = e.what();
                    }
                    result.cells.push_back(std::move(cell));
                }
    return result;
}

pool::PoolTimeline run_pool_study(const ScenarioConfig& cfg,
                                  bool inject_failure) {
    const auto uc = cfg.use_case;
    uc.validate();
    const auto trace =
        cell_trace(cfg, cfg.channel.length_km, cell_seed(cfg.run.seed, 0));
    const auto lead = pool::min_lead_time(trace, uc);
    const double lead_s = lead.value_or(0.0);
    const double step = comm::effective_period(uc);

    pool::ConsumptionSchedule sched;
    sched.lead_steps = static_cast<std::int64_t>(std::llround(lead_s / step));
    sched.normal_bits_per_period = pool::demand_bits_per_period(uc);
    sched.post_failure_bits_per_period = sched.normal_bits_per_period;
    if (inject_failure)
        sched.fail_step = static_cast<std::int64_t>(std::llround(
            (lead_s + cfg.failure.fail_offsets_s.front()) / step));

    const auto horizon = static_cast<std::int64_t>(
        std::llround((lead_s + kLeadHorizonS) / step));
    return pool::simulate_pool(trace, sched, horizon, step);
}

} // namespace qkdlink::scenario
