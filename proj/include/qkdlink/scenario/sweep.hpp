#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qkdlink/pool/key_pool.hpp"
#include "qkdlink/scenario/config.hpp"

namespace qkdlink::scenario {

/// One (distance, N, f_s, algorithm) cell of a lead-time sweep.
struct LeadCell {
    double distance_km = 0.0;
    std::int64_t n_signals = 0;
    double sampling_rate_hz = 0.0;
    crypto::Algorithm algorithm = crypto::Algorithm::OTP;
    std::optional<double> lead_s; ///< nullopt = NONVIABLE ("-")
    std::string error;            ///< per-cell error marker; run continues
};

struct LeadSweepResult {
    std::vector<LeadCell> cells;
};

/// One failure-study cell: lead from the lead optimization, failure injected
/// at lead + offset, uptime measured to exhaustion.
struct FailCell {
    double distance_km = 0.0;
    std::int64_t n_signals = 0;
    double sampling_rate_hz = 0.0;
    double fail_offset_s = 0.0;
    std::optional<double> lead_s;
    std::optional<double> uptime_s;        ///< same-cipher post-failure uptime
    std::optional<double> uptime_switch_s; ///< with the configured cipher switch
    std::string error;
};

struct FailSweepResult {
    std::vector<FailCell> cells;
};

/// Reporting is locked to sampling (kappa = 1) across sweeps, mirroring the
/// per-cycle refresh regime of the reference studies.
comm::UseCaseConfig sweep_use_case(const ScenarioConfig& cfg,
                                   std::int64_t n_signals,
                                   double sampling_rate_hz,
                                   crypto::Algorithm algorithm);

/// Deterministic per-cell seed derived from the master seed.
std::uint64_t cell_seed(std::uint64_t master, std::size_t cell_index);

LeadSweepResult run_lead_sweep(const ScenarioConfig& cfg);
FailSweepResult run_fail_sweep(const ScenarioConfig& cfg);

/// Pool timeline for the configured single use case: lead from the
/// optimizer, optional failure at lead + first configured offset.
pool::PoolTimeline run_pool_study(const ScenarioConfig& cfg,
                                  bool inject_failure);

} // namespace qkdlink::scenario
