#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <vector>

#include "qkdlink/comm/use_case.hpp"
#include "qkdlink/qkd/keygen_trace.hpp"

namespace qkdlink::pool {

/// Three-phase consumption profile on the step grid: zero before lead_steps,
/// normal_bits_per_period through fail_step (inclusive), then
/// post_failure_bits_per_period.
struct ConsumptionSchedule {
    std::int64_t lead_steps = 0;
    std::int64_t normal_bits_per_period = 0;
    std::int64_t post_failure_bits_per_period = 0;
    std::optional<std::int64_t> fail_step;

    /// n~[k] of the generalized consumption profile.
    std::int64_t demand_at(std::int64_t k) const {
        if (k < lead_steps) return 0;
        if (fail_step && k > *fail_step) return post_failure_bits_per_period;
        return normal_bits_per_period;
    }
};

/// Dynamic key-pool ledger sampled on the effective-period grid.
struct PoolTimeline {
    struct Entry {
        std::int64_t k;
        std::int64_t d_bits;
        std::int64_t generated_cum;
        std::int64_t consumed_cum;
    };
    double step_s = 1.0;
    std::int64_t d0_bits = 0;
    std::int64_t k_lead = 0;
    std::optional<std::int64_t> k_fail;
    std::optional<std::int64_t> k_exhaust; ///< first step with d <= 0
    std::vector<Entry> entries;

    void write_csv(std::ostream& out) const; ///< `k,t_s,d_bits,gen_cum,cons_cum`
};

/// Step the pool ledger over horizon_steps periods of step_s seconds.
/// Generation events are credited at their completion time (whole bits);
/// consumption follows the schedule. Throws if the trace does not cover the
/// horizon.
PoolTimeline simulate_pool(const qkd::KeyGenTrace& trace,
                           const ConsumptionSchedule& schedule,
                           std::int64_t horizon_steps, double step_s = 1.0,
                           std::int64_t d0_bits = 0);

/// Smallest lead time on the granularity grid keeping d[k] > 0 for the whole
/// horizon of secure communication; nullopt when no lead <= cap_s works.
std::optional<double> min_lead_time(const qkd::KeyGenTrace& trace,
                                    const comm::UseCaseConfig& cfg,
                                    double horizon_s = 36000.0,
                                    double cap_s = 18000.0,
                                    double granularity_s = 60.0);

constexpr double kUnboundedUptime = std::numeric_limits<double>::infinity();

/// Elapsed seconds between the failure step and pool exhaustion (d <= 0).
/// Generation stops contributing after the failure step. Returns
/// kUnboundedUptime when post-failure demand is zero.
double post_failure_uptime(const qkd::KeyGenTrace& trace,
                           const ConsumptionSchedule& schedule,
                           double step_s = 1.0);

/// Post-failure uptime when the cipher switches at the failure step; the
/// post-failure demand is recomputed for post_algorithm from cfg.
double uptime_with_switch(const qkd::KeyGenTrace& trace,
                          const ConsumptionSchedule& schedule_pre,
                          crypto::Algorithm post_algorithm,
                          const comm::UseCaseConfig& cfg, double step_s = 1.0);

/// Secure-uptime condition via the reserve-at-failure form:
/// d[k_fail] >= n_pf * t_auto / step (boundary inclusive).
bool autonomy_condition(const qkd::KeyGenTrace& trace,
                        const ConsumptionSchedule& schedule, double t_auto_s,
                        double step_s = 1.0);

/// The same condition in its two algebraically equivalent summation forms,
/// exposed separately so their agreement can be checked directly.
bool autonomy_condition_split_sums(const qkd::KeyGenTrace& trace,
                                   const ConsumptionSchedule& schedule,
                                   double t_auto_s, double step_s = 1.0);
bool autonomy_condition_grouped_sums(const qkd::KeyGenTrace& trace,
                                     const ConsumptionSchedule& schedule,
                                     double t_auto_s, double step_s = 1.0);

/// Closed-form average-rate approximation: smallest t_fail (>= t_lead)
/// such that the pool built at avg_skr sustains t_auto of post-failure
/// demand. nullopt when no finite t_fail satisfies it.
std::optional<double> simplified_min_reserve(double avg_skr_bps, double n_bar,
                                             double n_pf_bar, double dtau_s,
                                             double t_lead_s, double t_auto_s);

/// Demand per period for a use case, in whole bits (rounded up).
std::int64_t demand_bits_per_period(const comm::UseCaseConfig& cfg);

} // namespace qkdlink::pool
