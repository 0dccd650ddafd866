#include "qkdlink/harness/telemetry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qkdlink::harness {

TelemetrySource::TelemetrySource(std::int64_t n_signals,
                                 double sampling_rate_hz, std::uint64_t seed,
                                 double lower_bound, double upper_bound,
                                 double step_sigma)
    : n_signals_(n_signals),
      sampling_rate_hz_(sampling_rate_hz),
      lower_bound_(lower_bound),
      upper_bound_(upper_bound),
      step_sigma_(step_sigma),
      rng_(seed) {
    if (n_signals < 1)
        throw std::invalid_argument("telemetry: need at least one signal");
    if (sampling_rate_hz <= 0.0)
        throw std::invalid_argument("telemetry: sampling rate must be > 0");
    if (!(lower_bound < upper_bound))
        throw std::invalid_argument("telemetry: empty signal range");
    state_.resize(static_cast<std::size_t>(n_signals));
    for (auto& v : state_) v = rng_.uniform(lower_bound_, upper_bound_);
}

TelemetryFrame TelemetrySource::next() {
    TelemetryFrame frame;
    frame.cycle_index = cycle_;
    frame.timestamp_s = static_cast<double>(cycle_) / sampling_rate_hz_;
    frame.values.resize(state_.size());
    frame.values[0] = frame.timestamp_s; // timestamp channel
    for (std::size_t i = 1; i < state_.size(); ++i) {
        state_[i] = std::clamp(state_[i] + step_sigma_ * rng_.gaussian(),
                               lower_bound_, upper_bound_);
        frame.values[i] = state_[i];
    }
    ++cycle_;
    return frame;
}

std::vector<TelemetryFrame> generate_telemetry(std::int64_t n_signals,
                                               double sampling_rate_hz,
                                               double duration_s,
                                               std::uint64_t seed) {
    TelemetrySource src(n_signals, sampling_rate_hz, seed);
    const auto count =
        static_cast<std::int64_t>(std::floor(duration_s * sampling_rate_hz));
    std::vector<TelemetryFrame> frames;
    frames.reserve(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
    for (std::int64_t i = 0; i < count; ++i) frames.push_back(src.next());
    return frames;
}

} // namespace qkdlink::harness
