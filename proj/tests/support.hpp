#pragma once

// Shared test scaffolding: deliberately naive brute-force oracles (no
// incremental cursors, no binary search) plus random instance generators.

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "qkdlink/pool/key_pool.hpp"
#include "qkdlink/util/rng.hpp"

namespace testsupport {

using qkdlink::util::Rng;

/// Binary entropy evaluated independently in extended precision.
inline double entropy_oracle(double e) {
    if (e == 0.0 || e == 1.0) return 0.0;
    const long double x = e;
    const long double h = -(x * std::log(x) + (1.0L - x) * std::log(1.0L - x)) /
                          std::log(2.0L);
    return static_cast<double>(h);
}

/// Brute-force pool replay: rescans every trace event and every demand
/// period from scratch at each step.
inline std::vector<std::int64_t> replay_pool(
    const qkdlink::qkd::KeyGenTrace& trace,
    const qkdlink::pool::ConsumptionSchedule& sched, std::int64_t horizon,
    double step_s, std::int64_t d0 = 0) {
    std::vector<std::int64_t> d(static_cast<std::size_t>(horizon) + 1);
    for (std::int64_t k = 0; k <= horizon; ++k) {
        std::int64_t gen = 0;
        for (const auto& ev : trace.events)
            if (ev.completion_s() <= static_cast<double>(k) * step_s)
                gen += static_cast<std::int64_t>(
                    std::floor(ev.skr_bps * ev.delta_t_s));
        std::int64_t cons = 0;
        for (std::int64_t j = 1; j <= k; ++j) cons += sched.demand_at(j);
        d[static_cast<std::size_t>(k)] = d0 + gen - cons;
    }
    return d;
}

/// Exhaustive lead scan on the granularity grid using replay_pool only.
inline std::optional<double> lead_scan_oracle(
    const qkdlink::qkd::KeyGenTrace& trace, std::int64_t demand_bits,
    double step_s, double horizon_s, double cap_s, double granularity_s) {
    const auto horizon =
        static_cast<std::int64_t>(std::llround(horizon_s / step_s));
    const auto max_idx =
        static_cast<std::int64_t>(std::floor(cap_s / granularity_s));
    for (std::int64_t idx = 0; idx <= max_idx; ++idx) {
        const double lead_s = static_cast<double>(idx) * granularity_s;
        qkdlink::pool::ConsumptionSchedule sched;
        sched.lead_steps =
            static_cast<std::int64_t>(std::llround(lead_s / step_s));
        sched.normal_bits_per_period = demand_bits;
        sched.post_failure_bits_per_period = demand_bits;
        const auto d =
            replay_pool(trace, sched, sched.lead_steps + horizon, step_s);
        bool ok = true;
        for (std::int64_t k = sched.lead_steps + 1;
             k <= sched.lead_steps + horizon; ++k)
            if (d[static_cast<std::size_t>(k)] <= 0) {
                ok = false;
                break;
            }
        if (ok) return lead_s;
    }
    return std::nullopt;
}

/// Random irregular trace over [0, duration_s].
inline qkdlink::qkd::KeyGenTrace random_trace(Rng& rng, double duration_s,
                                              double max_skr = 20000.0) {
    qkdlink::qkd::KeyGenTrace trace;
    trace.duration_s = duration_s;
    double t = 0.0;
    while (true) {
        const double dt = rng.uniform(1.0, 30.0);
        if (t + dt > duration_s) break;
        qkdlink::qkd::KeyGenEvent ev;
        ev.t_s = t;
        ev.delta_t_s = dt;
        ev.skr_bps = rng.uniform(0.0, max_skr);
        ev.qber = rng.uniform(0.0, 0.1);
        trace.events.push_back(ev);
        t += dt;
    }
    return trace;
}

/// Random three-phase schedule compatible with a given horizon.
inline qkdlink::pool::ConsumptionSchedule random_schedule(
    Rng& rng, std::int64_t horizon, bool with_failure) {
    qkdlink::pool::ConsumptionSchedule sched;
    sched.lead_steps = static_cast<std::int64_t>(
        rng.below(static_cast<std::uint64_t>(horizon / 2 + 1)));
    sched.normal_bits_per_period =
        static_cast<std::int64_t>(rng.below(5000));
    sched.post_failure_bits_per_period =
        static_cast<std::int64_t>(rng.below(5000));
    if (with_failure)
        sched.fail_step =
            sched.lead_steps +
            static_cast<std::int64_t>(rng.below(
                static_cast<std::uint64_t>(horizon - sched.lead_steps) + 1));
    return sched;
}

} // namespace testsupport
