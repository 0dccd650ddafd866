#include "qkdlink/pool/key_pool.hpp"

#include <cmath>
#include <stdexcept>

namespace qkdlink::pool {

namespace {

/// Incremental walker over a trace: credits whole event bits at completion.
class CreditCursor {
public:
    explicit CreditCursor(const qkd::KeyGenTrace& trace) : trace_(trace) {}

    /// Cumulative bits from events completing at or before t.
    std::int64_t advance_to(double t) {
        while (next_ < trace_.events.size() &&
               trace_.events[next_].completion_s() <= t) {
            cum_ += trace_.events[next_].key_bits();
            ++next_;
        }
        return cum_;
    }

private:
    const qkd::KeyGenTrace& trace_;
    std::size_t next_ = 0;
    std::int64_t cum_ = 0;
};

} // namespace

std::int64_t demand_bits_per_period(const comm::UseCaseConfig& cfg) {
    return static_cast<std::int64_t>(std::ceil(comm::key_demand_per_period(cfg)));
}

void PoolTimeline::write_csv(std::ostream& out) const {
    out << "k,t_s,d_bits,gen_cum,cons_cum\n";
    char buf[160];
    for (const auto& e : entries) {
        std::snprintf(buf, sizeof buf, "%lld,%.6f,%lld,%lld,%lld\n",
                      static_cast<long long>(e.k),
                      static_cast<double>(e.k) * step_s,
                      static_cast<long long>(e.d_bits),
                      static_cast<long long>(e.generated_cum),
                      static_cast<long long>(e.consumed_cum));
        out << buf;
    }
}

PoolTimeline simulate_pool(const qkd::KeyGenTrace& trace,
                           const ConsumptionSchedule& schedule,
                           std::int64_t horizon_steps, double step_s,
                           std::int64_t d0_bits) {
    if (step_s <= 0.0)
        throw std::invalid_argument("simulate_pool: step must be > 0");
    if (horizon_steps < 0)
        throw std::invalid_argument("simulate_pool: negative horizon");
    if (trace.duration_s + 1e-9 <
        static_cast<double>(horizon_steps) * step_s)
        throw std::invalid_argument(
            "simulate_pool: trace shorter than horizon");
    if (schedule.fail_step && *schedule.fail_step < schedule.lead_steps)
        throw std::invalid_argument(
            "simulate_pool: failure before lead completion");

    PoolTimeline tl;
    tl.step_s = step_s;
    tl.d0_bits = d0_bits;
    tl.k_lead = schedule.lead_steps;
    tl.k_fail = schedule.fail_step;
    tl.entries.reserve(static_cast<std::size_t>(horizon_steps) + 1);

    CreditCursor credit(trace);
    std::int64_t consumed = 0;
    for (std::int64_t k = 0; k <= horizon_steps; ++k) {
        const std::int64_t gen = credit.advance_to(static_cast<double>(k) * step_s);
        if (k > 0) consumed += schedule.demand_at(k);
        const std::int64_t d = d0_bits + gen - consumed;
        tl.entries.push_back({k, d, gen, consumed});
        if (!tl.k_exhaust && k > schedule.lead_steps && d <= 0)
            tl.k_exhaust = k;
    }
    return tl;
}

namespace {

/// d[k] > 0 for every step in (lead, lead + horizon]?
bool lead_feasible(const qkd::KeyGenTrace& trace, std::int64_t lead_steps,
                   std::int64_t demand_bits, std::int64_t horizon_steps,
                   double step_s) {
    CreditCursor credit(trace);
    std::int64_t consumed = 0;
    const std::int64_t end = lead_steps + horizon_steps;
    for (std::int64_t k = lead_steps + 1; k <= end; ++k) {
        consumed += demand_bits;
        const std::int64_t gen =
            credit.advance_to(static_cast<double>(k) * step_s);
        if (gen - consumed <= 0) return false;
    }
    return true;
}

} // namespace

std::optional<double> min_lead_time(const qkd::KeyGenTrace& trace,
                                    const comm::UseCaseConfig& cfg,
                                    double horizon_s, double cap_s,
                                    double granularity_s) {
    const double step_s = comm::effective_period(cfg);
    const std::int64_t demand = demand_bits_per_period(cfg);
    const auto horizon_steps =
        static_cast<std::int64_t>(std::llround(horizon_s / step_s));
    if (trace.duration_s + 1e-9 < cap_s + horizon_s)
        throw std::invalid_argument("min_lead_time: trace too short");

    auto steps_for = [&](std::int64_t grid_idx) {
        const double lead_s = static_cast<double>(grid_idx) * granularity_s;
        return static_cast<std::int64_t>(std::llround(lead_s / step_s));
    };
    auto feasible = [&](std::int64_t grid_idx) {
        return lead_feasible(trace, steps_for(grid_idx), demand, horizon_steps,
                             step_s);
    };

    const auto max_idx =
        static_cast<std::int64_t>(std::floor(cap_s / granularity_s));
    if (!feasible(max_idx)) return std::nullopt;
    // feasibility is monotone in the lead: longer lead only delays consumption
    std::int64_t lo = 0, hi = max_idx;
    if (feasible(0)) return 0.0;
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        (feasible(mid) ? hi : lo) = mid;
    }
    return static_cast<double>(hi) * granularity_s;
}

namespace {

struct FailureState {
    std::int64_t k_fail;
    std::int64_t d_at_fail;
};

FailureState reserve_at_failure(const qkd::KeyGenTrace& trace,
                                const ConsumptionSchedule& schedule,
                                double step_s) {
    if (!schedule.fail_step)
        throw std::invalid_argument("post-failure analysis: fail_step not set");
    const std::int64_t k_fail = *schedule.fail_step;
    if (k_fail < schedule.lead_steps)
        throw std::invalid_argument(
            "post-failure analysis: failure before lead completion");
    if (trace.duration_s + 1e-9 < static_cast<double>(k_fail) * step_s)
        throw std::invalid_argument(
            "post-failure analysis: trace does not reach the failure step");
    CreditCursor credit(trace);
    const std::int64_t gen =
        credit.advance_to(static_cast<double>(k_fail) * step_s);
    std::int64_t consumed = 0;
    for (std::int64_t k = schedule.lead_steps; k <= k_fail; ++k)
        if (k > 0) consumed += schedule.demand_at(k);
    return {k_fail, gen - consumed};
}

} // namespace

double post_failure_uptime(const qkd::KeyGenTrace& trace,
                           const ConsumptionSchedule& schedule,
                           double step_s) {
    const auto st = reserve_at_failure(trace, schedule, step_s);
    const std::int64_t n_pf = schedule.post_failure_bits_per_period;
    if (st.d_at_fail <= 0) return 0.0;
    if (n_pf <= 0) return kUnboundedUptime;
    // with generation stopped, d drains linearly: first k with d <= 0
    const std::int64_t steps = (st.d_at_fail + n_pf - 1) / n_pf;
    return static_cast<double>(steps) * step_s;
}

double uptime_with_switch(const qkd::KeyGenTrace& trace,
                          const ConsumptionSchedule& schedule_pre,
                          crypto::Algorithm post_algorithm,
                          const comm::UseCaseConfig& cfg, double step_s) {
    comm::UseCaseConfig post_cfg = cfg;
    post_cfg.algorithm = post_algorithm;
    if (post_algorithm != crypto::Algorithm::OTP)
        post_cfg.key_reuse_factor = comm::reusability_factor(post_cfg);
    ConsumptionSchedule sched = schedule_pre;
    sched.post_failure_bits_per_period = demand_bits_per_period(post_cfg);
    return post_failure_uptime(trace, sched, step_s);
}

bool autonomy_condition(const qkd::KeyGenTrace& trace,
                        const ConsumptionSchedule& schedule, double t_auto_s,
                        double step_s) {
    if (t_auto_s < 0.0)
        throw std::invalid_argument("autonomy_condition: negative target");
    const auto st = reserve_at_failure(trace, schedule, step_s);
    const double required =
        static_cast<double>(schedule.post_failure_bits_per_period) * t_auto_s /
        step_s;
    return static_cast<double>(st.d_at_fail) >= required;
}

namespace {

std::int64_t k_auto_end(const ConsumptionSchedule& schedule, double t_auto_s,
                        double step_s) {
    return *schedule.fail_step +
           static_cast<std::int64_t>(std::llround(t_auto_s / step_s));
}

} // namespace

bool autonomy_condition_split_sums(const qkd::KeyGenTrace& trace,
                                   const ConsumptionSchedule& schedule,
                                   double t_auto_s, double step_s) {
    const auto st = reserve_at_failure(trace, schedule, step_s);
    std::int64_t lhs = st.d_at_fail; // generated minus consumed through k_fail
    std::int64_t rhs = 0;
    const std::int64_t end = k_auto_end(schedule, t_auto_s, step_s);
    for (std::int64_t k = st.k_fail + 1; k <= end; ++k)
        rhs += schedule.demand_at(k);
    return lhs >= rhs;
}

bool autonomy_condition_grouped_sums(const qkd::KeyGenTrace& trace,
                                     const ConsumptionSchedule& schedule,
                                     double t_auto_s, double step_s) {
    if (!schedule.fail_step)
        throw std::invalid_argument("autonomy condition: fail_step not set");
    CreditCursor credit(trace);
    const std::int64_t gen =
        credit.advance_to(static_cast<double>(*schedule.fail_step) * step_s);
    std::int64_t consumed = 0;
    const std::int64_t end = k_auto_end(schedule, t_auto_s, step_s);
    for (std::int64_t k = 1; k <= end; ++k) consumed += schedule.demand_at(k);
    return gen - consumed >= 0;
}

std::optional<double> simplified_min_reserve(double avg_skr_bps, double n_bar,
                                             double n_pf_bar, double dtau_s,
                                             double t_lead_s, double t_auto_s) {
    if (avg_skr_bps < 0.0 || n_bar < 0.0 || n_pf_bar < 0.0 || dtau_s <= 0.0 ||
        t_lead_s < 0.0 || t_auto_s < 0.0)
        throw std::invalid_argument("simplified_min_reserve: bad argument");
    // t_fail*(SKR - n/dtau) + n*t_lead/dtau >= n_pf*t_auto/dtau
    const double surplus_rate = avg_skr_bps - n_bar / dtau_s;
    const double lead_reserve = n_bar * t_lead_s / dtau_s;
    const double required = n_pf_bar * t_auto_s / dtau_s;
    if (surplus_rate > 0.0) {
        const double t = (required - lead_reserve) / surplus_rate;
        return std::max(t, t_lead_s);
    }
    // no steady surplus: only the material built before t_lead helps, and it
    // is largest at the earliest admissible failure time
    if (t_lead_s * avg_skr_bps >= required) return t_lead_s;
    return std::nullopt;
}

} // namespace qkdlink::pool
