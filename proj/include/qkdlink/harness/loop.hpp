#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <vector>

#include "qkdlink/comm/use_case.hpp"
#include "qkdlink/harness/transport.hpp"
#include "qkdlink/kms/http_api.hpp"

namespace qkdlink::harness {

/// Wall-clock duration of thunk in seconds (monotonic clock).
double measure_stage(const std::function<void()>& thunk);

/// What to do when the key service reports EXHAUSTED mid-run: stop the run
/// (default; the violation is never silent) or record the violation and
/// continue with the next cycle.
enum class ExhaustedPolicy { HALT, SKIP };

struct CycleRecord {
    std::int64_t cycle = 0;
    comm::LatencyRecord latency;
    bool ok = false;        ///< round trip completed bit-exactly
    bool exhausted = false; ///< availability violation on this cycle
};

struct StageStats {
    double mean_ms = 0.0;
    double std_ms = 0.0;
};

struct RunReport {
    std::vector<CycleRecord> cycles;
    std::int64_t completed = 0;
    std::int64_t exhausted = 0;
    std::int64_t integrity_failures = 0;
    bool halted = false;

    StageStats stats(double (comm::LatencyRecord::*component)() const) const;
    void write_csv(std::ostream& out) const;
    /// Per-stage mean/STD table (Total, QKD, Crypto) in milliseconds.
    void write_summary(std::ostream& out) const;
};

/// Replay the secure communication loop for the given number of reporting
/// cycles: fetch -> key request (A) -> encrypt -> transmit -> key-by-ID (B)
/// -> decrypt -> compare. Terminal B is serviced on an internal thread from
/// channel_b / keys_b. Reporting batches (kappa > 1) concatenate kappa
/// sampling frames into one envelope. Throws IntegrityError if any cycle
/// fails the bit-exact comparison.
RunReport run_loop(const comm::UseCaseConfig& cfg, std::int64_t cycles,
                   FramedChannel& channel_a, FramedChannel& channel_b,
                   kms::KeyServiceClient& keys_a, kms::KeyServiceClient& keys_b,
                   std::uint64_t seed,
                   ExhaustedPolicy policy = ExhaustedPolicy::HALT);

} // namespace qkdlink::harness
