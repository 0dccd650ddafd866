#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

#include "qkdlink/qkd/channel_model.hpp"

namespace qkdlink::qkd {

/// One completed key-distillation cycle. The cycle starts at t_s, runs for
/// delta_t_s and delivers its key material when it completes, at
/// t_s + delta_t_s.
struct KeyGenEvent {
    double t_s = 0.0;
    double delta_t_s = 0.0;
    double skr_bps = 0.0;
    double qber = 0.0;

    double completion_s() const { return t_s + delta_t_s; }
    /// Whole bits contributed by this cycle (rounded down).
    std::int64_t key_bits() const;
};

/// Timestamped sequence of key-distillation events; consecutive events are
/// contiguous (t_{g+1} = t_g + delta_t_g).
struct KeyGenTrace {
    std::vector<KeyGenEvent> events;
    double duration_s = 0.0; ///< time span the trace covers

    /// Total whole bits delivered by events completing at or before t.
    std::int64_t accumulated_bits(double t_s) const;

    void validate() const;
};

struct TraceNoise {
    /// Relative SKR standard deviation; default matches the measured
    /// ~10.3 kbps at a 320 kbps operating point.
    double skr_rel_sigma = 10.3 / 320.0;
    /// Absolute QBER standard deviation (~0.07%).
    double qber_sigma = 0.0007;
    bool enabled = true;
};

/// Deterministic synthetic trace for a channel model. Cycle g has
/// delta_t_g = cycle_period*(1+u), u uniform in [-jitter, +jitter]; the
/// optional first_cycle_s overrides the first interval (0 = use
/// cycle_period). SKR and QBER are perturbed per event by TraceNoise.
KeyGenTrace synthesize_trace(const ChannelModel& model, double duration_s,
                             double cycle_period_s, double jitter,
                             std::uint64_t seed, double first_cycle_s = 0.0,
                             const TraceNoise& noise = {});

/// Convenience: synthesize with the model's calibrated cadence.
KeyGenTrace synthesize_calibrated_trace(const ChannelModel& model,
                                        double duration_s, std::uint64_t seed);

/// Parse the CSV trace format (header `t_s,skr_bps,qber`). Row g carries the
/// completion timestamp of cycle g; the first cycle starts at t=0. Throws
/// std::runtime_error naming the offending row on malformed input.
KeyGenTrace load_trace(std::istream& in);

void save_trace(const KeyGenTrace& trace, std::ostream& out);

} // namespace qkdlink::qkd
