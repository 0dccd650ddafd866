#pragma once

#include <cstdint>
#include <vector>

#include "qkdlink/util/rng.hpp"

namespace qkdlink::harness {

/// One sampling instant of the reactor signal set. values[0] carries the
/// timestamp channel; the remaining channels are pseudo-sensor traces.
struct TelemetryFrame {
    std::int64_t cycle_index = 0;
    double timestamp_s = 0.0;
    std::vector<double> values;
};

/// Deterministic bounded-random-walk signal source.
class TelemetrySource {
public:
    TelemetrySource(std::int64_t n_signals, double sampling_rate_hz,
                    std::uint64_t seed, double lower_bound = -1000.0,
                    double upper_bound = 1000.0, double step_sigma = 1.0);

    TelemetryFrame next();

private:
    std::int64_t n_signals_;
    double sampling_rate_hz_;
    double lower_bound_, upper_bound_, step_sigma_;
    std::int64_t cycle_ = 0;
    std::vector<double> state_;
    util::Rng rng_;
};

/// Convenience batch generator: floor(duration * f_s) frames.
std::vector<TelemetryFrame> generate_telemetry(std::int64_t n_signals,
                                               double sampling_rate_hz,
                                               double duration_s,
                                               std::uint64_t seed);

} // namespace qkdlink::harness
